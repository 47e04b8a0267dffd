"""
Exact existence search for (n, q^k, n-k+1) MDS codes at small parameters.

An MDS code projects bijectively onto its first k coordinates, so it is the
graph of a map F: A^k -> A^(n-k).  The search assigns F message by message in
lexicographic order.  Two messages at distance m on the systematic part need
check tuples agreeing in at most m-1 positions; every assignment is
propagated forward to the domains (bitsets over check tuples) of all later
messages it constrains, and a wiped-out domain prunes the branch.

Symmetry: symbols of each check column may be relabelled freely, so each
column is required to be a restricted-growth string in message order (the
first message is mapped to all zeros, every new symbol is the smallest unused
one).  Coordinate permutations are not quotiented.

The witness returned for ``exists`` is the first solution in this order, so
it does not depend on the number of workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .alphabet import AlphabetSpec, parse_alphabet_spec
from .bounds import aggregate_bound
from .code import Code, _as_alphabet

EXISTS = "exists"
NOT_EXISTS = "not_exists"
UNKNOWN = "unknown"

DEFAULT_NODES = 10 ** 8
DEFAULT_SECS = 600.0
MAX_MESSAGES = 2 ** 20


class SoundnessError(AssertionError):
    """The search produced a code longer than a proven upper bound."""


@dataclass
class SearchProblem:
    n: int
    q: int
    k: int
    alphabet: AlphabetSpec | str | None = None
    budget_nodes: int = DEFAULT_NODES
    budget_secs: float = DEFAULT_SECS

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if not 2 <= self.k < self.n:
            raise ValueError(f"need 2 <= k < n, got n={self.n}, k={self.k}")
        if self.q ** self.k > MAX_MESSAGES:
            raise ValueError(f"q^k = {self.q}^{self.k} exceeds {MAX_MESSAGES} codewords")
        if isinstance(self.alphabet, str):
            self.alphabet = parse_alphabet_spec(self.alphabet)
        if self.alphabet is None:
            self.alphabet = AlphabetSpec.cyclic(self.q)
        if self.alphabet.order != self.q:
            raise ValueError(f"alphabet {self.alphabet} does not have order {self.q}")


@dataclass
class SearchOutcome:
    status: str
    witness: Code | None = None
    nodes: int = 0
    prunes: int = 0
    elapsed: float = 0.0

    def result_line(self) -> str:
        return f"RESULT {self.status} nodes={self.nodes} secs={self.elapsed:.3f}"


def _mask_from_bool(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


class _Engine:
    """Search state for one (n, q, k); messages and check tuples are indexed
    so that index order is lexicographic order."""

    def __init__(self, n: int, q: int, k: int):
        self.n, self.q, self.k = n, q, k
        self.c = c = n - k
        self.T = q ** c
        self.M = q ** k
        self.tdig = np.array(list(iproduct(range(q), repeat=c)), dtype=np.int8).reshape(-1, c)
        self.mdig = np.array(list(iproduct(range(q), repeat=k)), dtype=np.int8).reshape(-1, k)
        self.full = (1 << self.T) - 1
        self._compat: dict[tuple[int, int], int] = {}
        self._nbrs: dict[int, list[tuple[int, int]]] = {}
        self._growth: dict[tuple[int, ...], int] = {}
        # le[col][b]: tuples whose symbol in column col is <= b
        self._le = [[_mask_from_bool(self.tdig[:, col] <= b) for b in range(q)]
                    for col in range(c)]

    def compat(self, m: int, t: int) -> int:
        """Check tuples agreeing with t in at most m-1 positions."""
        key = (m, t)
        mask = self._compat.get(key)
        if mask is None:
            agree = (self.tdig == self.tdig[t]).sum(axis=1)
            mask = _mask_from_bool(agree <= m - 1)
            self._compat[key] = mask
        return mask

    def neighbours(self, i: int) -> list[tuple[int, int]]:
        """Later messages j > i constrained by message i, with their distance."""
        nb = self._nbrs.get(i)
        if nb is None:
            dist = (self.mdig[i + 1:] != self.mdig[i]).sum(axis=1)
            js = np.nonzero(dist <= self.c)[0]
            nb = [(int(j) + i + 1, int(dist[j])) for j in js]
            self._nbrs[i] = nb
        return nb

    def growth_mask(self, mx: tuple[int, ...]) -> int:
        mask = self._growth.get(mx)
        if mask is None:
            mask = self.full
            for col, b in enumerate(mx):
                mask &= self._le[col][min(b + 1, self.q - 1)]
            self._growth[mx] = mask
        return mask

    def witness_rows(self, assign: list[int]) -> list[tuple[int, ...]]:
        return [tuple(self.mdig[i].tolist()) + tuple(self.tdig[t].tolist())
                for i, t in enumerate(assign)]

    # ------------------------------------------------------------------

    def run(self, prefix: tuple[int, ...] = (), budget_nodes: int = DEFAULT_NODES,
            budget_secs: float = DEFAULT_SECS, stop_depth: int | None = None):
        """Depth-first search below a forced ``prefix`` of assignments.

        With ``stop_depth`` the search instead collects, in order, every
        consistent assignment of the first ``stop_depth`` messages and
        returns them (used to split work).  Otherwise returns
        (status, assignment or None, nodes, prunes).
        """
        M = self.M
        dom = [self.full] * M
        mx = (-1,) * self.c
        assign: list[int] = []
        trails: list[list[tuple[int, int]]] = []
        mxs: list[tuple[int, ...]] = []
        nodes = prunes = 0
        t0 = time.monotonic()
        frontier: list[tuple[int, ...]] = []

        def place(i: int, t: int) -> bool:
            trail: list[tuple[int, int]] = []
            ok = True
            for j, m in self.neighbours(i):
                old = dom[j]
                new = old & self.compat(m, t)
                if new != old:
                    trail.append((j, old))
                    dom[j] = new
                    if not new:
                        ok = False
                        break
            if not ok:
                for j, old in reversed(trail):
                    dom[j] = old
                return False
            trails.append(trail)
            return True

        def unplace() -> None:
            for j, old in reversed(trails.pop()):
                dom[j] = old

        # replay the forced prefix
        for i, t in enumerate(prefix):
            if not (dom[i] & self.growth_mask(mx)) >> t & 1 or not place(i, t):
                return (NOT_EXISTS, None, nodes, prunes) if stop_depth is None else []
            assign.append(t)
            mxs.append(mx)
            mx = tuple(max(a, int(b)) for a, b in zip(mx, self.tdig[t]))
        base = len(prefix)
        if base == M:
            return (EXISTS, assign, nodes, prunes) if stop_depth is None else [tuple(assign)]
        if stop_depth is not None and base >= stop_depth:
            return [tuple(assign)]

        cands = [0] * (M + 1)
        i = base
        cands[i] = dom[i] & self.growth_mask(mx)
        while True:
            x = cands[i]
            if not x:
                # backtrack
                if i == base:
                    break
                i -= 1
                assign.pop()
                unplace()
                mx = mxs.pop()
                continue
            t = (x & -x).bit_length() - 1
            cands[i] = x & (x - 1)
            nodes += 1
            if nodes >= budget_nodes or (nodes & 0xFFF) == 0 and time.monotonic() - t0 > budget_secs:
                if stop_depth is not None:
                    raise RuntimeError("budget exhausted while splitting the search")
                return (UNKNOWN, None, nodes, prunes)
            if not place(i, t):
                prunes += 1
                continue
            assign.append(t)
            mxs.append(mx)
            mx = tuple(max(a, int(b)) for a, b in zip(mx, self.tdig[t]))
            i += 1
            if stop_depth is not None and i == stop_depth:
                frontier.append(tuple(assign))
                assign.pop()
                unplace()
                mx = mxs.pop()
                i -= 1
                continue
            if i == M:
                return (EXISTS, assign, nodes, prunes)
            cands[i] = dom[i] & self.growth_mask(mx)
        if stop_depth is not None:
            return frontier
        return (NOT_EXISTS, None, nodes, prunes)


def _solve_subtree(args):
    n, q, k, prefix, budget_nodes, budget_secs = args
    eng = _Engine(n, q, k)
    return eng.run(prefix, budget_nodes, budget_secs)


def exists_mds(problem: SearchProblem, workers: int = 1, split_depth: int | None = None) -> SearchOutcome:
    """Decide whether an (n, q^k, n-k+1) MDS code exists.

    ``unknown`` means the node or time budget ran out; it is never a guess.
    With ``workers > 1`` the tree is cut at a shallow depth and subtrees are
    solved in parallel; each subtree gets the full budget.
    """
    p = problem
    t0 = time.monotonic()
    eng = _Engine(p.n, p.q, p.k)
    if workers <= 1 and split_depth is None:
        status, assign, nodes, prunes = eng.run((), p.budget_nodes, p.budget_secs)
        results = [(status, assign, nodes, prunes)]
    else:
        depth = split_depth if split_depth is not None else min(p.k + 1, eng.M)
        prefixes = eng.run(stop_depth=depth)
        jobs = [(p.n, p.q, p.k, pre, p.budget_nodes, p.budget_secs) for pre in prefixes]
        results = []
        if workers <= 1:
            for job in jobs:
                results.append(_solve_subtree(job))
                if results[-1][0] == EXISTS:
                    break
        else:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                futures = [ex.submit(_solve_subtree, job) for job in jobs]
                for fut in futures:
                    results.append(fut.result())
                    if results[-1][0] == EXISTS:
                        for f in futures:
                            f.cancel()
                        break
    nodes = sum(r[2] for r in results)
    prunes = sum(r[3] for r in results)
    elapsed = time.monotonic() - t0
    # a witness anywhere settles it, even if an earlier subtree ran out
    for status, assign, _, _ in results:
        if status == EXISTS:
            alphabet = _as_alphabet(p.alphabet)
            witness = Code(alphabet, eng.witness_rows(assign), n=p.n)
            return SearchOutcome(EXISTS, witness, nodes, prunes, elapsed)
    if any(r[0] == UNKNOWN for r in results):
        return SearchOutcome(UNKNOWN, None, nodes, prunes, elapsed)
    return SearchOutcome(NOT_EXISTS, None, nodes, prunes, elapsed)


@dataclass
class MaxLengthResult:
    q: int
    k: int
    n_max: int
    statuses: dict[int, str] = field(default_factory=dict)
    complete: bool = True
    bound: int | None = None
    outcomes: dict[int, SearchOutcome] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"q": self.q, "k": self.k, "n_max": self.n_max, "complete": self.complete,
                "bound": self.bound,
                "status": {str(n): s for n, s in sorted(self.statuses.items())}}


def max_length(q: int, k: int, budget_nodes: int = DEFAULT_NODES,
               budget_secs: float = DEFAULT_SECS, workers: int = 1,
               alphabet: AlphabetSpec | str | None = None) -> MaxLengthResult:
    """Largest n with an (n, q^k, n-k+1) MDS code, probing n = k+1, k+2, ...

    Puncturing keeps a code MDS, so the first ``not_exists`` settles the
    answer.  Probes stop at the proven upper bound plus one; a code found
    there raises SoundnessError.
    """
    bound = aggregate_bound(q, k).value
    res = MaxLengthResult(q, k, k, bound=bound)
    for n in range(k + 1, bound + 2):
        out = exists_mds(SearchProblem(n, q, k, alphabet, budget_nodes, budget_secs), workers)
        res.statuses[n] = out.status
        res.outcomes[n] = out
        if out.status == EXISTS:
            if n > bound:
                raise SoundnessError(f"found an (n={n}, {q}^{k}) MDS code above the bound {bound}")
            res.n_max = n
            continue
        res.complete = out.status == NOT_EXISTS
        break
    return res
