"""
Codes as finite sets of words over an alphabet, plus the distance / support /
equivalence vocabulary used to reason about MDS codes.

Coordinates are 1-based everywhere in the public API (supports, partitions,
fixed-coordinate assignments, equivalence permutations); arrays are 0-based
internally.
"""

from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .alphabet import Alphabet, AlphabetSpec


Word = tuple[int, ...]


class CodeError(ValueError):
    """Malformed code, partition, equivalence or coordinate request."""


class BudgetExceeded(RuntimeError):
    """An exact search was refused because its input is larger than allowed."""


def _as_alphabet(a) -> Alphabet:
    if isinstance(a, Alphabet):
        return a
    if isinstance(a, AlphabetSpec):
        return Alphabet(a)
    if isinstance(a, str):
        return Alphabet.from_string(a)
    raise TypeError(f"cannot make an alphabet from {a!r}")


def integer_log(size: int, q: int) -> int | None:
    """k with q**k == size, or None."""
    if size < 1:
        return None
    k = round(np.log(size) / np.log(q))
    for cand in (k - 1, k, k + 1):
        if cand >= 0 and q ** cand == size:
            return cand
    return None


class Code:
    """An immutable set of distinct words of common length ``n``.

    Words are kept in lexicographic order, so iteration and file output are
    deterministic and membership is a binary search.
    """

    def __init__(self, alphabet, words: Iterable[Sequence[int]], n: int | None = None):
        self.alphabet = _as_alphabet(alphabet)
        rows = [tuple(int(s) for s in w) for w in words]
        if n is None:
            if not rows:
                raise CodeError("empty code needs an explicit length n")
            n = len(rows[0])
        self.n = n
        for w in rows:
            if len(w) != n:
                raise CodeError(f"word {w} has length {len(w)}, expected {n}")
        q = self.alphabet.q
        rows.sort()
        for a, b in zip(rows, rows[1:]):
            if a == b:
                raise CodeError(f"duplicate codeword {a}")
        self._tuples: list[Word] = rows
        self.words = np.array(rows, dtype=np.int64).reshape(len(rows), n)
        if self.words.size and (self.words.min() < 0 or self.words.max() >= q):
            raise CodeError(f"symbol out of range for q={q}")
        self.words.setflags(write=False)
        self._d: int | None = None
        self.label = ""

    @classmethod
    def from_array(cls, alphabet, arr: np.ndarray) -> "Code":
        arr = np.asarray(arr)
        return cls(alphabet, map(tuple, arr.tolist()), n=arr.shape[1])

    # basic parameters ---------------------------------------------------

    @property
    def q(self) -> int:
        return self.alphabet.q

    @property
    def size(self) -> int:
        return len(self._tuples)

    def __len__(self) -> int:
        return len(self._tuples)

    def __iter__(self):
        return iter(self._tuples)

    def __contains__(self, w) -> bool:
        w = tuple(w)
        i = bisect.bisect_left(self._tuples, w)
        return i < len(self._tuples) and self._tuples[i] == w

    def __eq__(self, other) -> bool:
        return (isinstance(other, Code) and self.n == other.n
                and self.alphabet == other.alphabet and self._tuples == other._tuples)

    def __hash__(self) -> int:
        return hash((self.n, self.alphabet, tuple(self._tuples)))

    def __repr__(self) -> str:
        k = self.k
        size = f"{self.q}^{k}" if k is not None else str(self.size)
        return f"<Code ({self.n}, {size}) over {self.alphabet.spec_string}>"

    @property
    def k(self) -> int | None:
        """Dimension exponent when |C| is an exact power of q."""
        return integer_log(self.size, self.q)

    @property
    def d(self) -> int:
        if self._d is None:
            self._d = min_distance(self)
        return self._d

    @property
    def is_mds(self) -> bool:
        return verify_mds(self).is_mds

    def word(self, i: int) -> Word:
        return self._tuples[i]


# ---------------------------------------------------------------------------
# single words

def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise CodeError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def weight(u: Sequence[int]) -> int:
    return sum(1 for a in u if a)


def support(u: Sequence[int]) -> frozenset[int]:
    """1-based indices of the nonzero coordinates."""
    return frozenset(i + 1 for i, a in enumerate(u) if a)


def co_support(u: Sequence[int]) -> frozenset[int]:
    """1-based indices of the zero coordinates."""
    return frozenset(i + 1 for i, a in enumerate(u) if not a)


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint cover of the coordinates 1..n."""

    parts: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise CodeError("partition parts must be non-empty")
            for i in part:
                if not 1 <= i <= self.n:
                    raise CodeError(f"coordinate {i} outside 1..{self.n}")
                if i in seen:
                    raise CodeError(f"coordinate {i} appears in two parts")
                seen.add(i)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise CodeError(f"partition does not cover coordinates {missing}")

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]], n: int | None = None) -> "Partition":
        parts = tuple(tuple(sorted(p)) for p in parts)
        if n is None:
            n = sum(len(p) for p in parts)
        return cls(parts, n)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "Partition":
        """Consecutive parts: sizes (3, 4) gives {1,2,3} | {4,5,6,7}."""
        parts, start = [], 1
        for s in sizes:
            parts.append(tuple(range(start, start + s)))
            start += s
        return cls.of(parts)

    @classmethod
    def parse(cls, text: str, n: int) -> "Partition":
        """Parse ``"1-3|4-6"``; a part may mix ranges and single indices,
        e.g. ``"1,3|2,4-6"``."""
        parts = []
        for chunk in text.split("|"):
            idx: list[int] = []
            for item in chunk.split(","):
                item = item.strip()
                if not item:
                    continue
                try:
                    if "-" in item:
                        lo, hi = item.split("-")
                        lo, hi = int(lo), int(hi)
                        if lo > hi:
                            raise CodeError(f"empty range {item!r}")
                        idx.extend(range(lo, hi + 1))
                    else:
                        idx.append(int(item))
                except ValueError as exc:
                    if isinstance(exc, CodeError):
                        raise
                    raise CodeError(f"bad partition item {item!r}") from exc
            parts.append(idx)
        if len(set(i for p in parts for i in p)) != sum(len(p) for p in parts):
            raise CodeError(f"partition {text!r} has overlapping parts")
        return cls.of(parts, n)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def __str__(self) -> str:
        def fmt(part):
            runs, start, prev = [], part[0], part[0]
            for i in part[1:] + (None,):
                if i is not None and i == prev + 1:
                    prev = i
                    continue
                runs.append(f"{start}-{prev}" if prev > start else str(start))
                if i is not None:
                    start = prev = i
            return ",".join(runs)
        return "|".join(fmt(p) for p in self.parts)

    def indicator(self) -> np.ndarray:
        """n x p 0/1 matrix; ``nonzero_mask @ indicator`` gives profiles."""
        m = np.zeros((self.n, len(self.parts)), dtype=np.int64)
        for j, part in enumerate(self.parts):
            for i in part:
                m[i - 1, j] = 1
        return m


def weight_profile(u: Sequence[int], t: Partition) -> tuple[int, ...]:
    if len(u) != t.n:
        raise CodeError(f"word length {len(u)} does not match partition of {t.n}")
    return tuple(sum(1 for i in part if u[i - 1]) for part in t.parts)


# ---------------------------------------------------------------------------
# whole-code metrics

def _closest_pair(code: Code, stop_below: int | None = None) -> tuple[int, int, int]:
    W = code.words
    M = len(W)
    best, bi, bj = code.n + 1, -1, -1
    # last word first: ties go to the pair with the larger first word
    for i in range(M - 2, -1, -1):
        dist = (W[i + 1:] != W[i]).sum(axis=1)
        j = int(dist.argmin())
        if dist[j] < best:
            best, bi, bj = int(dist[j]), i, i + 1 + j
            if best <= 1 or (stop_below is not None and best < stop_below):
                break
    return best, bi, bj


def min_distance(code: Code, claimed: int | None = None) -> int:
    """Exact minimum pairwise distance by exhaustive pair scan.

    With ``claimed`` the scan stops at the first pair closer than that, so
    the return value is then only known to be below ``claimed``.
    """
    if code.size < 2:
        raise CodeError("minimum distance needs at least two codewords")
    return _closest_pair(code, claimed)[0]


def distance_distribution(code: Code) -> Counter:
    """Multiset of pairwise distances, as Counter {distance: pairs}."""
    W = code.words
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for i in range(len(W) - 1):
        dist = (W[i + 1:] != W[i]).sum(axis=1)
        counts += np.bincount(dist, minlength=code.n + 1)
    return Counter({d: int(c) for d, c in enumerate(counts) if c})


def max_agreement(code: Code) -> int:
    """Most coordinates on which two distinct codewords agree (n - d)."""
    return code.n - code.d


@dataclass
class MdsReport:
    is_mds: bool
    n: int
    q: int
    k: int | None
    d: int | None
    size: int
    reason: str = ""
    witness: tuple[Word, Word] | None = None

    def as_dict(self) -> dict:
        return {
            "is_mds": self.is_mds, "n": self.n, "q": self.q, "k": self.k,
            "d": self.d, "size": str(self.size), "reason": self.reason,
            "witness": [list(w) for w in self.witness] if self.witness else None,
        }

    def __str__(self) -> str:
        head = f"n={self.n} q={self.q} size={self.size} k={self.k} d={self.d}"
        if self.is_mds:
            return f"MDS ({self.n}, {self.q}^{self.k}, {self.d}): {head}"
        lines = [f"not MDS: {self.reason}", head]
        if self.witness:
            u, v = self.witness
            lines.append("witness: " + " ".join(map(str, u)) + "  vs  " + " ".join(map(str, v)))
        return "\n".join(lines)


def verify_mds(code: Code) -> MdsReport:
    """Check |C| = q^k (k >= 1) and d = n - k + 1, reporting why not."""
    k = code.k
    rep = MdsReport(False, code.n, code.q, k, None, code.size)
    if k is None or k < 1:
        rep.reason = f"size {code.size} is not q^k for an integer k >= 1"
        if code.size >= 2:
            rep.d = code.d
        return rep
    target = code.n - k + 1
    if code.size < 2:
        rep.reason = "fewer than two codewords"
        return rep
    d, i, j = _closest_pair(code, target)
    if d < target:
        rep.reason = f"pair at distance {d} < n-k+1 = {target}"
        rep.witness = (code.word(i), code.word(j))
        # the early-exited scan only bounds d; report the true minimum
        rep.d = code.d
        return rep
    code._d = d
    rep.d = d
    if d != target:
        # d > n-k+1 would break the Singleton bound; listed for completeness
        rep.reason = f"minimum distance {d} != n-k+1 = {target}"
        return rep
    rep.is_mds = True
    return rep


# ---------------------------------------------------------------------------
# translations and equivalences

def translate(code: Code, c: Sequence[int]) -> Code:
    """The coset c + C."""
    a = code.alphabet
    add = np.array(a.add_table, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    return Code.from_array(a, add[code.words, c[None, :]])


def normalize_contains_zero(code: Code) -> Code:
    """Translate by minus the lexicographically smallest word; result holds 0."""
    if code.size == 0:
        raise CodeError("cannot normalise an empty code")
    c0 = code.word(0)
    if not any(c0):
        return code
    a = code.alphabet
    return translate(code, [a.neg(s) for s in c0])


@dataclass(frozen=True)
class Equivalence:
    """Coordinate permutation ``sigma`` (1-based) plus symbol permutations.

    The image of a word u has i-th entry ``pis[i][u[sigma[i]]]``.
    """

    sigma: tuple[int, ...]
    pis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise CodeError(f"sigma {self.sigma} is not a permutation of 1..{n}")
        if len(self.pis) != n:
            raise CodeError(f"need {n} symbol permutations, got {len(self.pis)}")
        q = len(self.pis[0]) if self.pis else 0
        for pi in self.pis:
            if sorted(pi) != list(range(q)):
                raise CodeError(f"symbol map {pi} is not a permutation of 0..{q - 1}")

    @classmethod
    def identity(cls, n: int, q: int) -> "Equivalence":
        ident = tuple(range(q))
        return cls(tuple(range(1, n + 1)), (ident,) * n)

    @classmethod
    def random(cls, n: int, q: int, rng: np.random.Generator) -> "Equivalence":
        sigma = tuple(int(x) + 1 for x in rng.permutation(n))
        pis = tuple(tuple(int(x) for x in rng.permutation(q)) for _ in range(n))
        return cls(sigma, pis)


def apply_equivalence(code: Code, e: Equivalence) -> Code:
    if len(e.sigma) != code.n or len(e.pis[0]) != code.q:
        raise CodeError("equivalence does not match code length / alphabet size")
    W = code.words[:, [s - 1 for s in e.sigma]]
    maps = np.array(e.pis, dtype=np.int64)
    out = maps[np.arange(code.n)[None, :], W]
    return Code.from_array(code.alphabet, out)


def addition_witness(code: Code) -> tuple[Word, Word] | None:
    """A pair of words of the zero-normalised code whose sum is not a codeword,
    or None if that code is closed under addition."""
    c = normalize_contains_zero(code)
    add = np.array(c.alphabet.add_table, dtype=np.int64)
    # grow the subgroup H generated by codewords, coset by coset; every new
    # element is h + g with h in H (already checked to be a codeword) and g
    # a codeword, so the first miss is a witness and no miss means H = C
    H = [np.zeros(c.n, dtype=np.int64)]
    seen = {tuple(H[0].tolist())}
    for g in c:
        if g in seen:
            continue
        ga = np.array(g, dtype=np.int64)
        cur = np.array(H)
        while True:
            nxt = add[cur, ga]
            rows = [tuple(r) for r in nxt.tolist()]
            if rows[0] in seen:
                break
            for h, r in zip(cur.tolist(), rows):
                if r not in c:
                    return tuple(h), g
            seen.update(rows)
            H.extend(nxt)
            cur = nxt
    return None


def is_additive(code: Code) -> bool:
    return addition_witness(code) is None


# ---------------------------------------------------------------------------
# restriction counts used by the pigeonhole arguments

def count_fixed(code: Code, assignments: Iterable[tuple[int, int]],
                weight: int | None = None, partition: Partition | None = None,
                profile: Sequence[int] | None = None) -> int:
    """Number of codewords with the given (1-based coordinate, symbol) values.

    Optionally restrict to codewords of Hamming ``weight``, and/or to those
    whose ``partition`` weight profile equals ``profile``.
    """
    assignments = list(assignments)
    coords = [c for c, _ in assignments]
    if len(set(coords)) != len(coords):
        raise CodeError(f"duplicate coordinate in {assignments}")
    W = code.words
    mask = np.ones(len(W), dtype=bool)
    for c, s in assignments:
        if not 1 <= c <= code.n:
            raise CodeError(f"coordinate {c} outside 1..{code.n}")
        mask &= W[:, c - 1] == s
    nz = W != 0
    if weight is not None:
        mask &= nz.sum(axis=1) == weight
    if (partition is None) != (profile is None):
        raise CodeError("partition and profile must be given together")
    if partition is not None:
        prof = nz.astype(np.int64) @ partition.indicator()
        mask &= (prof == np.asarray(profile)[None, :]).all(axis=1)
    return int(mask.sum())


def _max_clique(adj: list[int], order: list[int]) -> list[int]:
    """Exact maximum clique via branch and bound on bitmasks.

    Ties are resolved towards the lexicographically first clique in
    ``order``.
    """
    best: list[int] = []

    def extend(clique: list[int], cand: int):
        nonlocal best
        if not cand:
            if len(clique) > len(best):
                best = clique[:]
            return
        if len(clique) + bin(cand).count("1") <= len(best):
            return
        for v in order:
            bit = 1 << v
            if not cand & bit:
                continue
            if len(clique) + bin(cand).count("1") <= len(best):
                return
            clique.append(v)
            extend(clique, cand & adj[v])
            clique.pop()
            cand &= ~bit

    # greedy warm start gives the bound a head start
    greedy, cand = [], (1 << len(adj)) - 1
    for v in order:
        if cand >> v & 1:
            greedy.append(v)
            cand &= adj[v]
    best = greedy
    extend([], (1 << len(adj)) - 1)
    return best


def max_common_support_family(code: Code, anchor: Iterable[int], w: int,
                              max_candidates: int = 30) -> tuple[int, list[Word]]:
    """Largest family of weight-``w`` codewords whose supports contain
    ``anchor`` and pairwise meet exactly in ``anchor``.

    Raises BudgetExceeded when more than ``max_candidates`` words qualify.
    """
    anchor = frozenset(anchor)
    if code.size == 0:
        return 0, []
    if any(not 1 <= i <= code.n for i in anchor):
        raise CodeError(f"anchor {sorted(anchor)} outside 1..{code.n}")
    if w > code.n:
        raise CodeError(f"weight {w} exceeds length {code.n}")
    cands = [u for u in code if weight(u) == w and anchor <= support(u)]
    if len(cands) > max_candidates:
        raise BudgetExceeded(
            f"{len(cands)} candidate words exceed the exact-search limit {max_candidates}")
    extra = [support(u) - anchor for u in cands]
    adj = [0] * len(cands)
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            if not extra[i] & extra[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    clique = _max_clique(adj, list(range(len(cands))))
    family = [cands[i] for i in sorted(clique)]
    return len(family), family
