"""
Weight distribution and partition weight enumerator (PWE) of MDS codes.

For an (n, q^k, d = n-k+1) MDS code containing the zero word the number of
codewords of weight w >= d is

    E(w) = (q-1) C(n,w) sum_{j=0}^{w-d} (-1)^j C(w-1,j) q^(w-d-j)

and for a partition of the coordinates into parts of sizes n_1..n_p the
number of codewords with per-part weights (w_1..w_p) is

    A(w_1..w_p) = E(w) prod_i C(n_i, w_i) / C(n, w),   w = sum w_i.

Neither needs linearity; only the zero word must be present.  Everything is
exact: integers, with ``fractions.Fraction`` wherever a division occurs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .code import Code, CodeError, Partition


class NonIntegralError(ArithmeticError):
    """A count that must be an integer came out as a proper fraction."""

    def __init__(self, value: Fraction, what: str = "value"):
        super().__init__(f"{what} = {value} is not an integer")
        self.value = value


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    E: tuple[int, ...]
    k: int | None = None
    q: int | None = None

    def __getitem__(self, w: int) -> int:
        return self.E[w]

    def __len__(self) -> int:
        return len(self.E)

    def __iter__(self):
        return iter(self.E)

    @property
    def total(self) -> int:
        return sum(self.E)

    @property
    def negative(self) -> bool:
        """Some entry is negative: no code with these parameters exists."""
        return any(e < 0 for e in self.E)

    def as_list(self) -> list[int]:
        return list(self.E)


def _check_params(n: int, k: int, q: int) -> None:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def mds_weight_coefficient(n: int, k: int, q: int, w: int) -> int:
    """E(w) for an (n, q^k, n-k+1) MDS code; 1 at w=0, 0 strictly below d."""
    _check_params(n, k, q)
    d = n - k + 1
    if w == 0:
        return 1
    if w < d or w > n:
        return 0
    s = sum((-1) ** j * comb(w - 1, j) * q ** (w - d - j) for j in range(w - d + 1))
    return (q - 1) * comb(n, w) * s


def mds_weight_distribution(n: int, k: int, q: int) -> WeightDistribution:
    E = tuple(mds_weight_coefficient(n, k, q, w) for w in range(n + 1))
    return WeightDistribution(n, E, k, q)


def is_hypothetical(n: int, k: int, q: int) -> bool:
    """Parameters no MDS code can have: beyond q+k-1 (k >= 2), or a negative
    entry in the weight distribution."""
    if k >= 2 and n > q + k - 1:
        return True
    return mds_weight_distribution(n, k, q).negative


def empirical_weight_distribution(code: Code) -> WeightDistribution:
    """Histogram of Hamming weights (normalise the code to contain 0 first)."""
    wts = (code.words != 0).sum(axis=1)
    counts = np.bincount(wts, minlength=code.n + 1)
    return WeightDistribution(code.n, tuple(int(c) for c in counts), code.k, code.q)


# ---------------------------------------------------------------------------
# partition weight enumerator

def _check_profile(part_sizes: Sequence[int], profile: Sequence[int]) -> None:
    if len(part_sizes) != len(profile):
        raise CodeError(f"profile {tuple(profile)} does not match {len(part_sizes)} parts")
    for ni, wi in zip(part_sizes, profile):
        if ni < 1:
            raise CodeError(f"part sizes must be >= 1, got {tuple(part_sizes)}")
        if not 0 <= wi <= ni:
            raise CodeError(f"profile entry {wi} outside 0..{ni}")


def pwe_rational(n: int, k: int, q: int, part_sizes: Sequence[int],
                 profile: Sequence[int]) -> Fraction:
    part_sizes, profile = tuple(part_sizes), tuple(profile)
    if sum(part_sizes) != n:
        raise CodeError(f"part sizes {part_sizes} do not sum to n={n}")
    _check_profile(part_sizes, profile)
    w = sum(profile)
    num = mds_weight_coefficient(n, k, q, w)
    for ni, wi in zip(part_sizes, profile):
        num *= comb(ni, wi)
    return Fraction(num, comb(n, w))


def pwe_formula(n: int, k: int, q: int, part_sizes: Sequence[int],
                profile: Sequence[int]) -> int:
    """Closed-form PWE value; raises NonIntegralError if it is not an integer.

    Works for hypothetical parameters too (see ``is_hypothetical``); that is
    how the nonexistence arguments evaluate it.
    """
    val = pwe_rational(n, k, q, part_sizes, profile)
    if val.denominator != 1:
        raise NonIntegralError(val, f"A{tuple(profile)}")
    return val.numerator


def profiles(part_sizes: Sequence[int]) -> Iterable[tuple[int, ...]]:
    return iproduct(*(range(ni + 1) for ni in part_sizes))


def pwe_formula_table(n: int, k: int, q: int, part_sizes: Sequence[int]) -> dict[tuple[int, ...], int]:
    return {p: pwe_formula(n, k, q, part_sizes, p) for p in profiles(part_sizes)}


def empirical_pwe_table(code: Code, t: Partition) -> Counter:
    """Counter {profile: number of codewords}."""
    if t.n != code.n:
        raise CodeError(f"partition is of {t.n} coordinates, code has length {code.n}")
    prof = (code.words != 0).astype(np.int64) @ t.indicator()
    rows, counts = np.unique(prof, axis=0, return_counts=True)
    return Counter({tuple(int(x) for x in r): int(c) for r, c in zip(rows, counts)})


def empirical_pwe(code: Code, t: Partition, profile: Sequence[int]) -> int:
    _check_profile(t.sizes, profile)
    return empirical_pwe_table(code, t).get(tuple(profile), 0)


# ---------------------------------------------------------------------------
# the restricted counts forced by the pigeonhole arguments

def restricted_count_value(q: int, variant: str, param: int | None = None) -> Fraction:
    """Exact value a restricted codeword count would be forced to take in a
    hypothetical maximal-length code.

    ``thm21``: |C_{1,1,0}| in a (q+3, q^(q-1), 5) code, i.e.
        A(2,3) / (3 (q-1)^2) for parts (3, q).
    ``thm22`` (param l >= 1): |C_{1,1}| in a (q+l+1, q^(q-2), l+4) code,
        A(2,l+2) / (q-1)^2 for parts (2, q+l-1).
    ``thm23`` (param k >= 4): |C_{1,1}| in a (q+k-2, q^k, q-1) code,
        A(2,q-3) / (q-1)^2 for parts (2, q+k-4).

    The count must be an integer if such a code exists, so a proper fraction
    certifies nonexistence.
    """
    if q < 4 or q % 2:
        raise ValueError(f"q must be even and >= 4, got {q}")
    if variant == "thm21":
        n, k = q + 3, q - 1
        a = pwe_formula(n, k, q, (3, q), (2, 3))
        return Fraction(a, 3 * (q - 1) ** 2)
    if variant == "thm22":
        l = param
        if l is None or l < 1:
            raise ValueError(f"thm22 needs l >= 1, got {l}")
        n, k = q + l + 1, q - 2
        a = pwe_formula(n, k, q, (2, q + l - 1), (2, l + 2))
        return Fraction(a, (q - 1) ** 2)
    if variant == "thm23":
        k = param
        if k is None or k < 4:
            raise ValueError(f"thm23 needs k >= 4, got {k}")
        n = q + k - 2
        a = pwe_formula(n, k, q, (2, q + k - 4), (2, q - 3))
        return Fraction(a, (q - 1) ** 2)
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------

def analysis_dict(n: int, k: int, q: int, E: Sequence[int],
                  pwe: Sequence[tuple[Partition | Sequence[Sequence[int]], Sequence[int], int]] = ()) -> dict:
    """JSON-ready analysis record; exact integers become decimal strings."""
    out = {"n": n, "k": k, "q": q, "E": [str(e) for e in E], "pwe": []}
    for parts, profile, value in pwe:
        if isinstance(parts, Partition):
            parts = parts.parts
        out["pwe"].append({
            "parts": [list(p) for p in parts],
            "profile": list(profile),
            "value": str(value),
        })
    return out
