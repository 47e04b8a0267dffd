"""
Known MDS codes, used as fixtures and as ground truth for the search.

Reed-Solomon codes evaluate every polynomial of degree < k at the field
elements 0, 1, ..., n-1 (index order).  The extended code appends the x^(k-1)
coefficient; the doubly-extended code (q even, k = 3) appends the x^2 and x
coefficients, i.e. the hyperoval {(1,t,t^2)} + (0,0,1) + nucleus (0,1,0).
Its dual is the doubly-extended code with k = q-1.

Group codes (parity, repetition, full) work over any abelian alphabet.  A
twisted code relabels the symbols of one coordinate by the 3-cycle
0 -> 1 -> 2 -> 0, which is not affine once q >= 5, so the image is MDS but not
closed under addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .alphabet import Alphabet, AlphabetSpec, default_alphabet_spec, parse_alphabet_spec, prime_power
from .code import Code, Equivalence, apply_equivalence, addition_witness, _as_alphabet

MAX_WORDS = 2 ** 20

KINDS = ("rs", "extended_rs", "doubly_extended_rs", "parity", "repetition", "full", "twisted")
FIELD_KINDS = ("rs", "extended_rs", "doubly_extended_rs")

TWIST = (1, 2, 0)  # symbol map on the twisted coordinate: 0->1, 1->2, 2->0


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    alphabet: AlphabetSpec
    k: int | None = None
    n: int | None = None
    base: "ConstructionSpec | None" = None

    def label(self) -> str:
        if self.kind == "twisted":
            return f"twisted({self.base.label()})"
        bits = [self.kind, str(self.alphabet)]
        if self.n is not None:
            bits.append(f"n={self.n}")
        if self.k is not None:
            bits.append(f"k={self.k}")
        return " ".join(bits)


def spec_for(kind: str, q: int | None = None, k: int | None = None, n: int | None = None,
             alphabet: str | AlphabetSpec | None = None,
             base: ConstructionSpec | None = None) -> ConstructionSpec:
    """Convenience constructor: the alphabet defaults to GF(q) for RS kinds
    and to Z_q otherwise."""
    if kind not in KINDS:
        raise ConstructionError(f"unknown construction {kind!r}; choose from {', '.join(KINDS)}")
    if kind == "twisted":
        if base is None:
            raise ConstructionError("twisted needs a base construction")
        return ConstructionSpec(kind, base.alphabet, base.k, base.n, base)
    if alphabet is None:
        if q is None:
            raise ConstructionError("give q or an alphabet")
        alphabet = default_alphabet_spec(q, field=kind in FIELD_KINDS)
    elif isinstance(alphabet, str):
        alphabet = parse_alphabet_spec(alphabet)
    if q is not None and alphabet.order != q:
        raise ConstructionError(f"alphabet {alphabet} has order {alphabet.order}, not q={q}")
    return ConstructionSpec(kind, alphabet, k, n)


# ---------------------------------------------------------------------------
# linear algebra over a field alphabet

def encode_linear(alphabet: Alphabet, G: np.ndarray) -> np.ndarray:
    """All q^k codewords sum_i m_i G[i], messages in lexicographic order."""
    k, n = G.shape
    q = alphabet.q
    if q ** k > MAX_WORDS:
        raise ConstructionError(f"q^k = {q}^{k} exceeds the {MAX_WORDS}-word limit")
    add = np.array(alphabet.add_table, dtype=np.int64)
    mul = np.array(alphabet.mul_table, dtype=np.int64)
    msgs = np.array(list(iproduct(range(q), repeat=k)), dtype=np.int64).reshape(-1, k)
    words = np.zeros((len(msgs), n), dtype=np.int64)
    for i in range(k):
        words = add[words, mul[msgs[:, i][:, None], G[i][None, :]]]
    return words


def null_space(alphabet: Alphabet, G: np.ndarray) -> np.ndarray:
    """Basis (rows) of {x : G x^T = 0} over the field."""
    A = [list(map(int, row)) for row in G]
    rows, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = alphabet.inv(A[r][c])
        A[r] = [alphabet.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [alphabet.sub(x, alphabet.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = alphabet.neg(A[i][fc])
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def rs_generator(alphabet: Alphabet, k: int, n: int) -> np.ndarray:
    G = np.zeros((k, n), dtype=np.int64)
    for j in range(n):
        x = 1
        for i in range(k):
            G[i, j] = x
            x = alphabet.mul(x, j)
    return G


def doubly_extended_generator(alphabet: Alphabet, k: int) -> np.ndarray:
    q = alphabet.q
    G3 = rs_generator(alphabet, 3, q)
    G3 = np.hstack([G3, np.array([[0], [0], [1]]), np.array([[0], [1], [0]])])
    if k == 3:
        return G3
    return null_space(alphabet, G3)


# ---------------------------------------------------------------------------

def _need_field(a: Alphabet, kind: str) -> None:
    if not a.is_field:
        raise ConstructionError(f"{kind} needs a field alphabet, got {a.spec_string}")


def build(spec: ConstructionSpec) -> Code:
    """Generate the code described by ``spec``; raises ConstructionError for
    parameter combinations that do not give an MDS code."""
    kind = spec.kind
    if kind == "twisted":
        return _build_twisted(spec)
    a = _as_alphabet(spec.alphabet)
    q = a.q
    k, n = spec.k, spec.n
    if kind in FIELD_KINDS:
        _need_field(a, kind)
        if k is None:
            raise ConstructionError(f"{kind} needs k")
    if kind == "rs":
        n = q if n is None else n
        if not 2 <= k <= q - 1:
            raise ConstructionError(f"rs needs 2 <= k <= q-1, got k={k}, q={q}")
        if not k <= n <= q:
            raise ConstructionError(f"rs needs k <= n <= q, got n={n}")
        words = encode_linear(a, rs_generator(a, k, n))
    elif kind == "extended_rs":
        if not 2 <= k <= q - 1:
            raise ConstructionError(f"extended_rs needs 2 <= k <= q-1, got k={k}, q={q}")
        if n is not None and n != q + 1:
            raise ConstructionError(f"extended_rs has length q+1 = {q + 1}")
        e = np.zeros((k, 1), dtype=np.int64)
        e[k - 1, 0] = 1
        words = encode_linear(a, np.hstack([rs_generator(a, k, q), e]))
    elif kind == "doubly_extended_rs":
        if q % 2 or q < 4:
            raise ConstructionError(f"doubly_extended_rs needs even q >= 4, got q={q}")
        if k not in (3, q - 1):
            raise ConstructionError(f"doubly_extended_rs needs k in {{3, q-1}}, got k={k}")
        if n is not None and n != q + 2:
            raise ConstructionError(f"doubly_extended_rs has length q+2 = {q + 2}")
        words = encode_linear(a, doubly_extended_generator(a, k))
    elif kind in ("parity", "repetition", "full"):
        if n is None or n < 1 or (kind == "parity" and n < 2):
            raise ConstructionError(f"{kind} needs a length n (>= 2 for parity)")
        if kind == "repetition":
            words = np.repeat(np.arange(q, dtype=np.int64)[:, None], n, axis=1)
        else:
            free = n - 1 if kind == "parity" else n
            if q ** free > MAX_WORDS:
                raise ConstructionError(f"{q}^{free} words exceed the {MAX_WORDS}-word limit")
            words = np.array(list(iproduct(range(q), repeat=free)), dtype=np.int64).reshape(-1, free)
            if kind == "parity":
                add = np.array(a.add_table, dtype=np.int64)
                neg = np.array(a.neg_table, dtype=np.int64)
                s = np.zeros(len(words), dtype=np.int64)
                for i in range(free):
                    s = add[s, words[:, i]]
                words = np.hstack([words, neg[s][:, None]])
    else:
        raise ConstructionError(f"unknown construction {kind!r}")
    code = Code.from_array(a, words)
    code.label = spec.label()
    return code


def _build_twisted(spec: ConstructionSpec) -> Code:
    base = build(spec.base)
    q, n = base.q, base.n
    if q < 3:
        raise ConstructionError("twisting needs q >= 3")
    twist = list(range(q))
    twist[:3] = TWIST
    ident = tuple(range(q))
    e = Equivalence(tuple(range(1, n + 1)), (ident,) * (n - 1) + (tuple(twist),))
    code = apply_equivalence(base, e)
    if addition_witness(code) is None:
        raise ConstructionError(
            f"twist of {spec.base.label()} is still closed under addition "
            "(the 3-cycle is affine over this alphabet)")
    code.label = spec.label()
    return code


def _prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if prime_power(q)]


def fixture_suite(max_q: int) -> list[Code]:
    """Deterministic list of verified-by-construction MDS codes with q <= max_q."""
    if max_q > 16:
        raise ValueError("fixture_suite supports max_q <= 16")
    specs: list[ConstructionSpec] = []
    if max_q >= 2:
        specs.append(spec_for("parity", q=2, n=3))
    for q in _prime_powers(3, max_q):
        for k in (2, 3):
            if k <= q - 1:
                specs.append(spec_for("rs", q=q, k=k, n=q))
                specs.append(spec_for("extended_rs", q=q, k=k))
        if q % 2 == 0 and q >= 4:
            specs.append(spec_for("doubly_extended_rs", q=q, k=3))
            if q - 1 != 3 and q ** (q - 1) <= 4096:
                specs.append(spec_for("doubly_extended_rs", q=q, k=q - 1))
        if q >= 5:
            specs.append(spec_for("twisted", base=spec_for("extended_rs", q=q, k=2)))
            specs.append(spec_for("twisted", base=spec_for("extended_rs", q=q, k=3)))
    if max_q >= 4:
        specs.append(spec_for("parity", alphabet="product:2x2", n=4))
        specs.append(spec_for("twisted", base=spec_for("parity", q=4, n=3)))
    if max_q >= 6:
        specs.append(spec_for("parity", q=6, n=4))
    return [build(s) for s in specs]
