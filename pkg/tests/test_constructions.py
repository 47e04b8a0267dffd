import itertools

import pytest

from mdskit.bounds import aggregate_bound
from mdskit.code import addition_witness, is_additive, verify_mds
from mdskit.codefile import dumps
from mdskit.constructions import ConstructionError, build, fixture_suite, spec_for


def params(code):
    rep = verify_mds(code)
    assert rep.is_mds, (code.label, rep.reason)
    return rep.n, rep.q, rep.k, rep.d


def test_parity_over_z6():
    c = build(spec_for("parity", q=6, n=4))
    assert params(c) == (4, 6, 3, 2) and c.size == 216
    assert all(sum(w) % 6 == 0 for w in c)


def test_parity_over_product_group():
    c = build(spec_for("parity", alphabet="product:2x2", n=4))
    a = c.alphabet
    for w in c:
        s = 0
        for x in w:
            s = a.add(s, x)
        assert s == 0
    assert params(c) == (4, 4, 3, 2)


def test_rs_gf4():
    assert params(build(spec_for("rs", q=4, k=2, n=4))) == (4, 4, 2, 3)


def test_rs_gf5_evaluation_points():
    c = build(spec_for("rs", q=5, k=2, n=5))
    for m0, m1 in itertools.product(range(5), repeat=2):
        assert tuple((m0 + m1 * x) % 5 for x in range(5)) in c


def test_extended_rs_last_coordinate():
    c = build(spec_for("extended_rs", q=5, k=3))
    assert params(c) == (6, 5, 3, 4)
    for m in itertools.product(range(5), repeat=3):
        w = tuple(sum(m[i] * x ** i for i in range(3)) % 5 for x in range(5)) + (m[2],)
        assert w in c


def test_doubly_extended_gf4_tight():
    c = build(spec_for("doubly_extended_rs", q=4, k=3))
    assert params(c) == (6, 4, 3, 4) and c.size == 64
    assert c.n == aggregate_bound(4, 3).value == 4 + 2


@pytest.mark.parametrize("q", [8, 16])
def test_doubly_extended_k3(q):
    c = build(spec_for("doubly_extended_rs", q=q, k=3))
    assert params(c) == (q + 2, q, 3, q)


def test_doubly_extended_k_q_minus_1_word_limit():
    # the k = q-1 dual at q = 8 has 8^7 = 2^21 words
    with pytest.raises(ConstructionError):
        build(spec_for("doubly_extended_rs", q=8, k=7))


def test_full_and_repetition():
    assert params(build(spec_for("full", q=3, n=3))) == (3, 3, 3, 1)
    rep = build(spec_for("repetition", alphabet="product:2x3", n=4))
    assert rep.size == 6
    r = verify_mds(rep)
    assert r.is_mds and r.k == 1 and r.d == 4


def test_twisted_is_mds_and_not_additive():
    for q in (5, 7, 8):
        base = spec_for("extended_rs", q=q, k=2)
        tw = build(spec_for("twisted", base=base))
        assert params(tw) == params(build(base))
        assert addition_witness(tw) is not None
        assert tw.label.startswith("twisted(")


@pytest.mark.parametrize("base", [
    spec_for("extended_rs", q=4, k=2),
    spec_for("extended_rs", q=3, k=2),
    spec_for("parity", alphabet="product:2x2", n=3),
    spec_for("parity", q=2, n=3),
])
def test_twist_rejected_when_affine(base):
    with pytest.raises(ConstructionError):
        build(spec_for("twisted", base=base))


@pytest.mark.parametrize("kind,kw", [
    ("rs", dict(q=4, k=2, n=5)),
    ("rs", dict(q=4, k=4)),
    ("rs", dict(q=6, k=2)),
    ("rs", dict(alphabet="cyclic:5", k=2)),
    ("extended_rs", dict(q=4, k=2, n=6)),
    ("doubly_extended_rs", dict(q=5, k=3)),
    ("doubly_extended_rs", dict(q=8, k=4)),
    ("parity", dict(q=3)),
    ("parity", dict(q=2, n=30)),
])
def test_invalid_constructions(kind, kw):
    with pytest.raises((ConstructionError, ValueError)):
        build(spec_for(kind, **kw))


def test_unknown_kind_and_order_mismatch():
    with pytest.raises(ConstructionError):
        spec_for("hexacode", q=4)
    with pytest.raises(ConstructionError):
        spec_for("parity", q=5, alphabet="cyclic:4", n=3)
    with pytest.raises(ConstructionError):
        spec_for("twisted")


def test_fixture_suite_small():
    labels4 = {(c.n, c.q, c.k) for c in fixture_suite(4)}
    assert {(5, 4, 2), (6, 4, 3), (4, 3, 2)} <= labels4
    two = fixture_suite(2)
    assert [(c.n, c.q, c.k) for c in two] == [(3, 2, 2)]
    assert any(not is_additive(c) for c in fixture_suite(4))


def test_fixture_suite_all_verified(fixtures8):
    assert len(fixtures8) >= 25
    for c in fixtures8:
        params(c)
    nonlin = [c for c in fixtures8 if c.label.startswith("twisted")]
    assert nonlin and all(addition_witness(c) is not None for c in nonlin)
    groups = {c.alphabet.spec_string for c in fixtures8}
    assert {"cyclic:6", "product:2x2"} <= groups
    de = [c for c in fixtures8 if c.label.startswith("doubly_extended_rs")]
    assert {(c.q, c.n) for c in de} == {(4, 6), (8, 10)}


def test_fixture_suite_deterministic(fixtures8):
    again = fixture_suite(8)
    assert [c.label for c in again] == [c.label for c in fixtures8]
    assert all(dumps(a) == dumps(b) for a, b in zip(again, fixtures8))


def test_fixture_suite_limit():
    with pytest.raises(ValueError):
        fixture_suite(17)
