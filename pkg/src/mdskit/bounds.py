"""
Upper bounds on M_q(k), the largest n admitting an (n, q^k, n-k+1) MDS code
over an alphabet of size q.

Each theorem is a predicate on (q, k) plus the bound it then gives; the
aggregate is the minimum over all applicable ones, keeping the full list so
redundant theorems stay visible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import factorial


class TheoremId(str, enum.Enum):
    T1_1a = "T1_1a"
    T1_1b = "T1_1b"
    T1_2a = "T1_2a"
    T1_2b = "T1_2b"
    T1_3 = "T1_3"
    T2_1 = "T2_1"
    T2_2 = "T2_2"
    T2_3 = "T2_3"
    TRIVIAL = "TRIVIAL"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Provenance:
    theorem: TheoremId
    value: int
    condition: str
    l_star: int | None = None


@dataclass
class BoundResult:
    q: int
    k: int
    value: int
    provenance: list[Provenance] = field(default_factory=list)

    @property
    def by(self) -> list[TheoremId]:
        """Theorems attaining the minimum."""
        return [p.theorem for p in self.provenance if p.value == self.value]

    @property
    def l_star(self) -> int | None:
        for p in self.provenance:
            if p.theorem is TheoremId.T2_2:
                return p.l_star
        return None

    def as_dict(self, full: bool = False) -> dict:
        d = {"q": self.q, "k": self.k, "bound": self.value,
             "by": [str(t) for t in self.by], "l_star": self.l_star}
        if full:
            d["provenance"] = [
                {"theorem": str(p.theorem), "value": p.value, "condition": p.condition,
                 **({"l_star": p.l_star} if p.l_star is not None else {})}
                for p in self.provenance
            ]
        return d


def _check(q: int, k: int) -> None:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if k < 2:
        raise ValueError(f"k must be >= 2 (M_q(1) is unbounded), got {k}")


def divisibility_product(q: int, mode: str, param: int) -> tuple[int, int]:
    """(product, factorial) as written in the divisibility hypotheses.

    thm22(l): (q+l-1)...(q+1) q (q-2)  against (l+2)!
    thm23(k): (q+k-4)...(q+1) q (q-2)  against (k-1)!
    The factor q-1 is absent in both.
    """
    if mode == "thm22":
        if param < 1:
            raise ValueError(f"l must be >= 1, got {param}")
        top, fact = q + param - 1, factorial(param + 2)
    elif mode == "thm23":
        if param < 4:
            raise ValueError(f"k must be >= 4, got {param}")
        top, fact = q + param - 4, factorial(param - 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    prod = q * (q - 2)
    for x in range(q + 1, top + 1):
        prod *= x
    return prod, fact


def divisibility_condition(q: int, mode: str, param: int) -> bool:
    """True iff the factorial does NOT divide the product (the theorem fires)."""
    if q % 2:
        raise ValueError(f"q must be even, got {q}")
    prod, fact = divisibility_product(q, mode, param)
    return prod % fact != 0


def t22_l_star(q: int, l_max: int | None = None) -> int | None:
    """Least l >= 1 (l <= l_max, default q) for which 3!.. (l+2)! fails to
    divide the product; incremental so the sweep stays cheap."""
    if q % 2 or q < 4:
        return None
    l_max = q if l_max is None else l_max
    prod, fact = q * (q - 2), 6
    for l in range(1, l_max + 1):
        if l > 1:
            prod *= q + l - 1
            fact *= l + 2
        if prod % fact:
            return l
    return None


def _evaluate(tid: TheoremId, q: int, k: int) -> Provenance | None:
    T = TheoremId
    if tid is T.TRIVIAL:
        return Provenance(tid, q + k - 1, "k >= 2")
    if tid is T.T1_1a:
        if k >= 3 and q > 2 and q % 4:
            return Provenance(tid, q + k - 2, "k >= 3, q > 2, 4 does not divide q")
        return None
    if tid is T.T1_1b:
        if k > 3 and q > 2 and q % 36:
            return Provenance(tid, q + k - 2, "k > 3, q > 2, 36 does not divide q")
        return None
    if tid is T.T1_2a:
        # q > 3: for q <= 3 the bound q+k-3 < k+1 contradicts the parity code
        if k >= 4 and q > 3 and q % 36:
            return Provenance(tid, q + k - 3, "k >= 4, q > 3, 36 does not divide q")
        return None
    if tid is T.T1_2b:
        if k == 3 and q > 2 and q % 4 == 2:
            return Provenance(tid, q, "k = 3, q > 2, q = 2 mod 4")
        return None
    if tid is T.T1_3:
        if k == q - 1 and q % 2:
            return Provenance(tid, q + 1, "k = q-1, q odd")
        return None
    if tid is T.T2_1:
        if k == q - 1 and q % 6 == 4:
            return Provenance(tid, q + 2, "k = q-1, q = 4 mod 6")
        return None
    if tid is T.T2_2:
        if k == q - 2 and q % 2 == 0:
            l = t22_l_star(q)
            if l is not None:
                return Provenance(tid, q + l, f"k = q-2, q even, {l + 2}! does not divide "
                                  f"the product at l = {l}", l_star=l)
        return None
    if tid is T.T2_3:
        if q % 2 == 0 and k >= 4 and divisibility_condition(q, "thm23", k):
            return Provenance(tid, q + k - 3, f"q even, k >= 4, {k - 1}! does not divide "
                              "the product")
        return None
    raise ValueError(f"unknown theorem {tid!r}")


def theorem_bound(tid: TheoremId | str, q: int, k: int) -> int | None:
    """Bound on M_q(k) from one theorem, or None if its hypotheses fail."""
    _check(q, k)
    p = _evaluate(TheoremId(tid), q, k)
    return None if p is None else p.value


def theorem_provenance(tid: TheoremId | str, q: int, k: int) -> Provenance | None:
    _check(q, k)
    return _evaluate(TheoremId(tid), q, k)


def aggregate_bound(q: int, k: int, theorems=None) -> BoundResult:
    """Minimum over every applicable theorem (or over ``theorems`` only)."""
    _check(q, k)
    ids = list(TheoremId) if theorems is None else [TheoremId(t) for t in theorems]
    if TheoremId.TRIVIAL not in ids:
        ids.insert(0, TheoremId.TRIVIAL)
    order = {t: i for i, t in enumerate(TheoremId)}
    prov = [p for p in (_evaluate(t, q, k) for t in ids) if p is not None]
    prov.sort(key=lambda p: (p.value, order[p.theorem]))
    return BoundResult(q, k, prov[0].value, prov)


def bound_table(q_range, k_range) -> list[BoundResult]:
    qs, ks = list(q_range), list(k_range)
    if not qs or not ks:
        raise ValueError("empty q or k range")
    return [aggregate_bound(q, k) for q in sorted(qs) for k in sorted(ks)]
