"""Integral edge-cover services: the subset DP for minimum cover sizes, the
zeta-backed cover-decision tables, the binary search driving the
generalized-hypertree-width solve, and per-bag cover certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import Hypergraph, VertexSet, bits
from .errors import CapacityExceeded
from .subsetzeta import DEFAULT_TABLE_CAP, SubsetTable, cover_count_table


@dataclass(frozen=True)
class CoverCertificate:
    """A concrete minimum edge cover of one bag."""

    bag: VertexSet
    edges: tuple[int, ...]  # indices into the hypergraph's edge list


def rho_table_dp(h: Hypergraph, cap: int = DEFAULT_TABLE_CAP) -> SubsetTable:
    """Minimum cover size for every vertex subset.

    Rolls the (U, i) recurrence over the edges in place, so space stays one
    table of 2^n small integers. Edge reuse cannot shrink a cover, which is
    what makes the in-place sweep sound.
    """
    if h.n > cap:
        raise CapacityExceeded(f"cover table for n={h.n} exceeds the cap of {cap}")
    size = 1 << h.n
    inf = h.n + 1
    table = [inf] * size
    table[0] = 0
    for e in h.edges:
        drop = ~e
        for u in range(size):
            c = table[u & drop] + 1
            if c < table[u]:
                table[u] = c
    if max(table) >= inf:
        raise AssertionError("some subset is uncoverable; isolated vertex slipped through")
    return SubsetTable(h.n, table)


def rho_of_set(h: Hypergraph, x: VertexSet) -> int:
    """Minimum cover size of one set, via a DP over the set's own subsets."""
    if x == 0:
        return 0
    verts = list(bits(x))
    pos = {v: i for i, v in enumerate(verts)}
    seen: set[int] = set()
    traces: list[int] = []
    for e in h.edges:
        t = e & x
        if t and t not in seen:
            seen.add(t)
            traces.append(t)
    traces.sort(key=lambda t: -t.bit_count())
    maximal: list[int] = []
    for t in traces:
        if not any(t & ~big == 0 for big in maximal):
            maximal.append(t)
    compact = [sum(1 << pos[v] for v in bits(t)) for t in maximal]
    k = len(verts)
    by_low: list[list[int]] = [[] for _ in range(k)]
    for t in compact:
        for i in range(k):
            if t & (1 << i):
                by_low[i].append(t)
    size = 1 << k
    inf = k + 1
    dp = [inf] * size
    dp[0] = 0
    for u in range(1, size):
        low = (u & -u).bit_length() - 1
        best = inf
        for t in by_low[low]:
            c = dp[u & ~t]
            if c < best:
                best = c
        dp[u] = best + 1
    return dp[size - 1]


def ghw_decision_tables(h: Hypergraph, k: int, cap: int = DEFAULT_TABLE_CAP) -> Callable[[VertexSet], bool]:
    """Predicate telling whether a set has an edge cover of size at most k,
    backed by positivity of the length-k cover-sequence counts."""
    if not 0 <= k <= h.m:
        raise ValueError("k out of range")
    table = cover_count_table(h, k, cap).values
    return lambda u: table[u] > 0


def coverability_width_function(h: Hypergraph, k: int, zeta_cap: int = DEFAULT_TABLE_CAP):
    """Thresholded width function: 0 where a <=k cover exists, 1 otherwise.

    Uses the zeta-backed decision table when the vertex count fits under the
    table cap and falls back to memoized per-query DP beyond it.
    """
    from .widthfn import WidthFunction

    if h.n <= zeta_cap:
        pred = ghw_decision_tables(h, k, zeta_cap)
    else:
        memo: dict[int, int] = {}

        def pred(u: int, _memo=memo) -> bool:
            r = _memo.get(u)
            if r is None:
                r = _memo[u] = rho_of_set(h, u)
            return r <= k

    return WidthFunction(f"ghw-decision-{k}", lambda u: 0 if pred(u) else 1)


def ghw_binary_search(h: Hypergraph, solve_decision, zeta_cap: int = DEFAULT_TABLE_CAP) -> int:
    """Smallest k whose thresholded decision solve answers yes.

    ``solve_decision`` receives the thresholded width function and returns
    the engine's optimum; an optimum of at most zero means every bag of some
    decomposition is coverable within k edges.
    """
    lo, hi = 1, min(h.m, h.n)
    while lo < hi:
        mid = (lo + hi) // 2
        if solve_decision(coverability_width_function(h, mid, zeta_cap)) <= 0:
            hi = mid
        else:
            lo = mid + 1
    if solve_decision(coverability_width_function(h, lo, zeta_cap)) > 0:
        raise AssertionError("covering with all edges must always succeed")
    return lo


def extract_cover(h: Hypergraph, bag: VertexSet) -> CoverCertificate:
    """Minimum cover of one bag, tie-broken to the lexicographically
    smallest ascending sequence of edge indices."""
    if bag == 0:
        return CoverCertificate(0, ())
    idx_trace: list[tuple[int, int]] = []
    for i, e in enumerate(h.edges):
        t = e & bag
        if t:
            idx_trace.append((i, t))
    count = len(idx_trace)
    inf = bag.bit_count() + 1
    memo: dict[tuple[int, int], int] = {}

    def suffix_rho(u0: int, j0: int) -> int:
        stack = [(u0, j0)]
        while stack:
            u, j = stack[-1]
            if (u, j) in memo:
                stack.pop()
                continue
            if u == 0:
                memo[(u, j)] = 0
                stack.pop()
                continue
            if j >= count:
                memo[(u, j)] = inf
                stack.pop()
                continue
            t = idx_trace[j][1]
            skip = (u, j + 1)
            take = (u & ~t, j + 1) if t & u else None
            missing = [key for key in (skip, take) if key is not None and key not in memo]
            if missing:
                stack.extend(missing)
                continue
            best = memo[skip]
            if take is not None:
                best = min(best, memo[take] + 1)
            memo[(u, j)] = best
            stack.pop()
        return memo[(u0, j0)]

    budget = suffix_rho(bag, 0)
    picks: list[int] = []
    u = bag
    j = 0
    while u:
        t = idx_trace[j][1]
        if t & u and suffix_rho(u & ~t, j + 1) + 1 == budget:
            picks.append(idx_trace[j][0])
            u &= ~t
            budget -= 1
        j += 1
    cert = CoverCertificate(bag, tuple(picks))
    union = 0
    for i in cert.edges:
        union |= h.edges[i]
    if union & bag != bag:
        raise AssertionError("certificate does not cover its bag")
    return cert


def integral_cover_function(h: Hypergraph):
    """Width function X -> minimum cover size, memoized per query set."""
    from .widthfn import WidthFunction

    memo: dict[int, int] = {}

    def evaluate(u: int) -> int:
        r = memo.get(u)
        if r is None:
            r = memo[u] = rho_of_set(h, u)
        return r

    return WidthFunction("ghw", evaluate)
