import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdskit.alphabet import Alphabet
from mdskit.code import (BudgetExceeded, Code, CodeError, Equivalence, Partition,
                         addition_witness, apply_equivalence, co_support, count_fixed,
                         distance_distribution, hamming_distance, max_agreement,
                         max_common_support_family, min_distance, normalize_contains_zero,
                         support, translate, verify_mds, weight, weight_profile)
from mdskit.codefile import CodeFileError, dumps, loads
from mdskit.constructions import build, spec_for

PARITY = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


def brute_min_distance(code):
    return min(hamming_distance(u, v) for u, v in itertools.combinations(list(code), 2))


@pytest.fixture
def parity():
    return Code("cyclic:2", PARITY)


# --- words ----------------------------------------------------------------

def test_hamming_distance_examples():
    assert hamming_distance((0, 0, 0), (0, 0, 0)) == 0
    assert hamming_distance((1, 1, 0, 2, 0), (1, 1, 0, 0, 3)) == 2
    assert hamming_distance((0, 1, 1), (1, 0, 1)) == 2
    with pytest.raises(CodeError):
        hamming_distance((0, 1), (0, 1, 1))


def test_support_examples():
    assert support((1, 1, 0, 2, 0)) == {1, 2, 4}
    assert co_support((1, 1, 0, 2, 0)) == {3, 5}
    assert support((0,) * 5) == frozenset()
    assert co_support((1, 2, 3, 1)) == frozenset()


@given(st.lists(st.integers(0, 4), min_size=1, max_size=12))
def test_support_cosupport_partition_coordinates(u):
    s, c = support(u), co_support(u)
    assert s | c == set(range(1, len(u) + 1))
    assert not s & c
    assert len(s) == weight(u)


def test_weight_profile_examples():
    t = Partition.parse("1-3|4-6", 6)
    assert weight_profile((1, 1, 0, 2, 0, 3), t) == (2, 2)
    assert weight_profile((0,) * 6, t) == (0, 0)
    one = Partition.from_sizes([6])
    assert weight_profile((1, 1, 0, 2, 0, 3), one) == (4,)


@given(st.lists(st.integers(0, 3), min_size=2, max_size=10), st.data())
def test_weight_profile_sums_to_weight(u, data):
    n = len(u)
    labels = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    parts = [[i + 1 for i in range(n) if labels[i] == b] for b in range(3)]
    parts = [p for p in parts if p]
    t = Partition.of(parts, n)
    prof = weight_profile(u, t)
    assert sum(prof) == weight(u)
    assert all(0 <= w <= s for w, s in zip(prof, t.sizes))


def test_partition_parse_and_errors():
    t = Partition.parse("1,3|2,4-6", 6)
    assert t.parts == ((1, 3), (2, 4, 5, 6))
    assert str(Partition.parse("1-3|4-6", 6)) == "1-3|4-6"
    for bad in ["1-3|3-6", "1-2|4-6", "1-3|4-7", "a-b|1", "3-1|4-6"]:
        with pytest.raises(CodeError):
            Partition.parse(bad, 6)


@settings(max_examples=200)
@given(st.integers(1, 8), st.integers(2, 5), st.data())
def test_metric_axioms(n, q, data):
    word = st.lists(st.integers(0, q - 1), min_size=n, max_size=n)
    u, v, w = data.draw(word), data.draw(word), data.draw(word)
    assert hamming_distance(u, u) == 0
    assert (hamming_distance(u, v) == 0) == (u == v)
    assert hamming_distance(u, v) == hamming_distance(v, u)
    assert hamming_distance(u, w) <= hamming_distance(u, v) + hamming_distance(v, w)


# --- code objects -----------------------------------------------------------

def test_code_rejects_duplicates_and_bad_symbols():
    with pytest.raises(CodeError):
        Code("cyclic:2", [(0, 1), (0, 1)])
    with pytest.raises(CodeError):
        Code("cyclic:2", [(0, 2)])
    with pytest.raises(CodeError):
        Code("cyclic:2", [(0, 1), (0, 1, 1)])


def test_code_sorted_membership(parity):
    c = Code("cyclic:2", reversed(PARITY))
    assert list(c) == PARITY
    assert (1, 0, 1) in c and (1, 1, 1) not in c


def test_min_distance_examples(parity, de_rs_q4):
    assert min_distance(parity) == 2
    assert min_distance(Code("cyclic:3", [(0, 0, 0), (1, 1, 1), (2, 2, 2)])) == 3
    assert min_distance(de_rs_q4) == brute_min_distance(de_rs_q4) == 4
    with pytest.raises(CodeError):
        min_distance(Code("cyclic:2", [(0, 0)]))


def test_verify_mds_parity(parity):
    rep = verify_mds(parity)
    assert rep.is_mds and rep.k == 2 and rep.d == 2


def test_verify_mds_failure_witness():
    bad = Code("cyclic:2", [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
    rep = verify_mds(bad)
    assert not rep.is_mds
    assert rep.witness == ((1, 0, 1), (1, 1, 1))
    assert hamming_distance(*rep.witness) == 1
    assert rep.d == 1


def test_verify_mds_size_mismatch():
    rep = verify_mds(Code("cyclic:2", [(0, 0, 0), (1, 1, 1), (0, 1, 1)]))
    assert not rep.is_mds and rep.k is None and "size" in rep.reason


def test_verify_mds_extended_rs(ext_rs_q4):
    rep = verify_mds(ext_rs_q4)
    assert rep.is_mds and (rep.n, rep.q, rep.k, rep.d) == (5, 4, 2, 4)


# --- translations and equivalences -----------------------------------------

def test_normalize_identity_when_zero_present(parity):
    assert normalize_contains_zero(parity) == parity


def test_normalize_small_example():
    c = Code("cyclic:3", [(1, 1), (2, 0)])
    assert list(normalize_contains_zero(c)) == [(0, 0), (1, 2)]


def test_normalize_restores_shifted_rs(de_rs_q4):
    shifted = translate(de_rs_q4, (1, 2, 3, 0, 1, 2))
    assert (0,) * 6 not in shifted
    assert normalize_contains_zero(shifted) == de_rs_q4


@pytest.mark.parametrize("shift", [(1, 0, 2, 2), (3, 3, 3, 1)])
def test_normalize_preserves_distances(shift):
    c = build(spec_for("twisted", base=spec_for("parity", q=4, n=3)))
    c = Code(c.alphabet, [tuple(w) + (0,) for w in c])  # any non-MDS padding is fine
    shifted = translate(c, shift)
    z = normalize_contains_zero(shifted)
    assert (0,) * 4 in z
    assert distance_distribution(z) == distance_distribution(shifted)


def test_identity_equivalence(de_rs_q4):
    assert apply_equivalence(de_rs_q4, Equivalence.identity(6, 4)) == de_rs_q4


def test_coordinate_swap_of_parity(parity):
    ident = (0, 1)
    e = Equivalence((2, 1, 3), (ident,) * 3)
    assert apply_equivalence(parity, e) == parity


def test_equivalence_semantics():
    # image entry i is pis[i][u[sigma[i]]]
    c = Code("cyclic:3", [(0, 1, 2)])
    e = Equivalence((3, 1, 2), ((1, 2, 0), (0, 1, 2), (2, 1, 0)))
    assert list(apply_equivalence(c, e)) == [(0, 0, 1)]


def test_malformed_equivalence():
    with pytest.raises(CodeError):
        Equivalence((1, 1, 2), ((0, 1),) * 3)
    with pytest.raises(CodeError):
        Equivalence((1, 2), ((0, 0), (0, 1)))


@pytest.mark.parametrize("seed", range(5))
def test_random_equivalence_preserves_mds(ext_rs_q4, seed):
    rng = np.random.default_rng(seed)
    e = Equivalence.random(5, 4, rng)
    img = apply_equivalence(ext_rs_q4, e)
    rep = verify_mds(img)
    assert rep.is_mds and (rep.n, rep.k, rep.d) == (5, 2, 4)
    assert distance_distribution(img) == distance_distribution(ext_rs_q4)
    assert len(img) == len(ext_rs_q4)


def test_addition_witness():
    lin = build(spec_for("extended_rs", q=5, k=2))
    assert addition_witness(lin) is None
    tw = build(spec_for("twisted", base=spec_for("extended_rs", q=5, k=2)))
    u, v = addition_witness(tw)
    z = normalize_contains_zero(tw)
    s = tuple((a + b) % 5 for a, b in zip(u, v))
    assert u in z and v in z and s not in z


# --- restriction counts -----------------------------------------------------

def test_count_fixed_examples(de_rs_q4):
    assert count_fixed(de_rs_q4, [(1, 0), (2, 0)]) == 4
    assert count_fixed(de_rs_q4, [(1, 0), (2, 3), (5, 1)]) == 1
    with pytest.raises(CodeError):
        count_fixed(de_rs_q4, [(1, 0), (1, 1)])


def test_count_fixed_with_weight_filter(de_rs_q4):
    # weight-4 words with a1 = a2 = a (nonzero): over the 9 nonzero pairs
    # they add up to the (2,2) profile count on parts {1,2} | {3..6}
    t = Partition.parse("1-2|3-6", 6)
    counts = {(a, b): count_fixed(de_rs_q4, [(1, a), (2, b)], weight=4)
              for a in range(1, 4) for b in range(1, 4)}
    total = sum(counts.values())
    direct = sum(1 for w in de_rs_q4 if weight(w) == 4 and w[0] and w[1])
    assert total == direct
    assert count_fixed(de_rs_q4, [], partition=t, profile=(2, 2)) == direct
    assert max(counts.values()) * 9 >= total
    assert counts[(1, 1)] == count_fixed(de_rs_q4, [(1, 1), (2, 1)], partition=t, profile=(2, 2))


def test_oa_projection_property(fixtures8):
    checked = 0
    for code in fixtures8:
        if code.n > 7 or code.q > 5:
            continue
        k, q = code.k, code.q
        for m in range(0, k + 1):
            for coords in itertools.combinations(range(1, code.n + 1), m):
                for vals in itertools.product(range(q), repeat=m):
                    assert count_fixed(code, zip(coords, vals)) == q ** (k - m)
        checked += 1
    assert checked >= 8


def test_max_agreement_examples(parity, de_rs_q4):
    assert max_agreement(parity) == 1
    assert max_agreement(de_rs_q4) == 2
    rep = Code("cyclic:3", [(a,) * 4 for a in range(3)])
    assert max_agreement(rep) == 0


def test_max_agreement_tracks_mds(fixtures8):
    for code in fixtures8:
        if code.size <= 300:
            assert max_agreement(code) == code.n - brute_min_distance(code)
        assert max_agreement(code) == code.k - 1
    bad = Code("cyclic:2", [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
    assert max_agreement(bad) == 2 != bad.k - 1


def _valid_family(words, anchor):
    extra = [support(w) - anchor for w in words]
    return all(not (a & b) for a, b in itertools.combinations(extra, 2))


def brute_family_size(code, anchor, w):
    cands = [u for u in code if weight(u) == w and anchor <= support(u)]
    best = 0
    for s in range(1, len(cands) + 1):
        if any(_valid_family(c, anchor) for c in itertools.combinations(cands, s)):
            best = s
        else:
            break
    return best


def test_max_common_support_family_empty():
    assert max_common_support_family(Code("cyclic:2", [], n=3), {1}, 2) == (0, [])


def test_max_common_support_family_de_rs(de_rs_q4):
    anchor = frozenset({1, 2})
    size, fam = max_common_support_family(de_rs_q4, anchor, 4)
    assert size == brute_family_size(de_rs_q4, anchor, 4) == 2
    assert _valid_family(fam, anchor)
    assert all(anchor <= support(u) and weight(u) == 4 for u in fam)


def test_family_budget_and_packing_bound():
    rs = build(spec_for("rs", q=8, k=4, n=8))          # (8, 8^4, 5)
    anchor = frozenset({1, 2, 4})
    with pytest.raises(BudgetExceeded):
        max_common_support_family(rs, anchor, 5)
    size, fam = max_common_support_family(rs, anchor, 5, max_candidates=100)
    assert size <= (8 - 2) // 2
    assert sum(len(support(u) - anchor) for u in fam) <= rs.n - len(anchor)
    assert size == brute_family_size(rs, anchor, 5)


def test_family_repetition_code_even_q():
    rep = build(spec_for("repetition", q=4, n=5))       # d = 5
    size, fam = max_common_support_family(rep, {1, 2, 3}, 5)
    assert size == 1 <= (4 - 2) // 2


@pytest.mark.parametrize("anchor,w", [({1}, 4), ({3, 4}, 4), ({1, 2, 3}, 5), (set(), 4)])
def test_family_support_packing(de_rs_q4, anchor, w):
    anchor = frozenset(anchor)
    try:
        size, fam = max_common_support_family(de_rs_q4, anchor, w)
    except BudgetExceeded:
        size, fam = max_common_support_family(de_rs_q4, anchor, w, max_candidates=200)
    assert sum(len(support(u) - anchor) for u in fam) <= de_rs_q4.n - len(anchor)
    if len(fam) <= 12:
        assert size == brute_family_size(de_rs_q4, anchor, w) or size > 3


# --- code file format -------------------------------------------------------

def test_codefile_roundtrip(de_rs_q4):
    text = dumps(de_rs_q4, comment="doubly extended RS")
    back = loads(text)
    assert back == de_rs_q4
    assert dumps(back, comment="doubly extended RS") == text
    assert text.splitlines()[1] == "n=6 q=4 alphabet=field:2^2:poly=1,1,1"


def test_codefile_comments_and_default_alphabet():
    c = loads("# parity\nn=3 q=2\n0 0 0  # zero\n1 1 0\n\n0 1 1\n1 0 1\n")
    assert list(c) == PARITY
    assert c.alphabet == Alphabet.from_string("cyclic:2")


@pytest.mark.parametrize("text,line,col", [
    ("n=3 q=2\n0 0\n", 2, None),
    ("n=3 q=2\n0 0 x\n", 2, 5),
    ("n=3 q=2\n0 0 2\n", 2, 5),
    ("n=3 q=2 alphabet=cyclic:3\n", 1, None),
    ("n=3 z=2\n", 1, 5),
    ("# only a comment\n", 1, None),
    ("n=2 q=2\n0 1\n0 1\n", 3, None),
])
def test_codefile_errors(text, line, col):
    with pytest.raises(CodeFileError) as ei:
        loads(text)
    assert ei.value.line == line
    if col is not None:
        assert ei.value.column == col
