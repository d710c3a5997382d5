"""Brute-force references used by the test suite and the CLI's --oracle
cross-check. Everything here is deliberately naive and hard-capped in size;
none of it shares nontrivial code with the solver paths it certifies."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .core import Graph, Hypergraph, VertexSet, bits, gaifman, mask_of, universe
from .decompose import PmcList
from .errors import CapacityExceeded
from .lpcover import CoverLp, build_cover_lp
from .subsetzeta import SubsetTable
from .widthfn import INFINITY, WidthValue, size_width

FTW_CAP = 9
PMC_CAP = 7
ZETA_CAP = 14
COVER_CAP = 20
LP_ROW_CAP = 7
LP_COL_CAP = 8


def ftw_by_elimination(g: Graph, f) -> WidthValue:
    """Minimum, over all elimination orders, of the largest f-value of an
    elimination bag; equals the optimum width since every order yields a
    triangulation and some order yields an optimal one."""
    if g.n > FTW_CAP:
        raise CapacityExceeded(f"elimination oracle capped at {FTW_CAP} vertices")
    full = universe(g.n)
    memo: dict[int, WidthValue] = {}

    def fval(bag: int) -> WidthValue:
        v = memo.get(bag)
        if v is None:
            v = memo[bag] = f(bag)
        return v

    best: WidthValue = INFINITY
    for perm in permutations(range(g.n)):
        adj = list(g.adj)
        alive = full
        worst: WidthValue = -1
        pruned = False
        for v in perm:
            bit = 1 << v
            nb = adj[v] & alive & ~bit
            w = fval(nb | bit)
            if w > worst:
                worst = w
                if not worst < best:
                    pruned = True
                    break
            for u in bits(nb):
                adj[u] |= nb & ~(1 << u)
            alive &= ~bit
        if not pruned and worst < best:
            best = worst
    return best


def _mcs_is_chordal(n: int, adj: list[int]) -> bool:
    # Maximum-cardinality search followed by the perfect-elimination check.
    weight = [0] * n
    used = 0
    order: list[int] = []
    for _ in range(n):
        v = max(range(n), key=lambda u: (weight[u], -u) if not used & (1 << u) else (-1, 0))
        order.append(v)
        used |= 1 << v
        for u in bits(adj[v] & ~used):
            weight[u] += 1
    order.reverse()
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        later = [u for u in bits(adj[v]) if pos[u] > i]
        if later:
            w = min(later, key=lambda u: pos[u])
            rest = mask_of(later) & ~(1 << w)
            if rest & ~adj[w]:
                return False
    return True


def _eliminate(adj_in, perm) -> tuple[list[int], list[tuple[int, int]]]:
    """Bags and fill edges of the elimination game for one order."""
    adj = list(adj_in)
    n = len(adj)
    alive = universe(n)
    bags: list[int] = []
    fill: list[tuple[int, int]] = []
    for v in perm:
        bit = 1 << v
        nb = adj[v] & alive & ~bit
        bags.append(nb | bit)
        for u in bits(nb):
            missing = nb & ~adj[u] & ~(1 << u)
            for w in bits(missing):
                if w > u:
                    fill.append((u, w))
            adj[u] |= nb & ~(1 << u)
        alive &= ~bit
    return bags, fill


def pmcs_by_elimination(g: Graph) -> PmcList:
    """Union of the maximal cliques of every minimal triangulation, where
    triangulations are produced by elimination orders and minimality is
    checked by single-fill-edge deletion."""
    if g.n > PMC_CAP:
        raise CapacityExceeded(f"elimination pmc oracle capped at {PMC_CAP} vertices")
    found: set[int] = set()
    seen_fills: set[frozenset] = set()
    for perm in permutations(range(g.n)):
        bags, fill = _eliminate(g.adj, perm)
        fill_key = frozenset(fill)
        if fill_key in seen_fills:
            continue
        seen_fills.add(fill_key)
        tri = list(g.adj)
        for u, w in fill:
            tri[u] |= 1 << w
            tri[w] |= 1 << u
        minimal = True
        for u, w in fill:
            reduced = list(tri)
            reduced[u] &= ~(1 << w)
            reduced[w] &= ~(1 << u)
            if _mcs_is_chordal(g.n, reduced):
                minimal = False
                break
        if not minimal:
            continue
        for bag in bags:
            if not any(bag != other and bag & ~other == 0 for other in bags):
                found.add(bag)
    ordered = sorted(found, key=lambda p: (p.bit_count(), tuple(bits(p))))
    return PmcList(tuple(ordered))


def naive_zeta(t: SubsetTable) -> SubsetTable:
    """Direct double loop over subsets; the oracle for the fast sweep."""
    if t.n > ZETA_CAP:
        raise CapacityExceeded(f"naive zeta capped at {ZETA_CAP} elements")
    vals = t.values
    out = [0] * len(vals)
    for y in range(len(vals)):
        acc = 0
        s = y
        while True:
            acc += vals[s]
            if s == 0:
                break
            s = (s - 1) & y
        out[y] = acc
    return SubsetTable(t.n, out)


@lru_cache(maxsize=32)
def _union_table(edges: tuple[int, ...]) -> list[int]:
    size = 1 << len(edges)
    table = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        table[mask] = table[mask ^ low] | edges[low.bit_length() - 1]
    return table


def min_cover_exhaustive(h: Hypergraph, x: VertexSet) -> int:
    """Minimum edge-cover size by scanning every subset of edges."""
    if h.m > COVER_CAP:
        raise CapacityExceeded(f"exhaustive cover oracle capped at {COVER_CAP} edges")
    if x == 0:
        return 0
    unions = _union_table(h.edges)
    best = h.m + 1
    for mask, covered in enumerate(unions):
        if x & ~covered == 0:
            k = mask.bit_count()
            if k < best:
                best = k
    if best > h.m:
        raise ValueError("query set is not coverable")
    return best


def _solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]):
    """Gaussian elimination; None when the system is singular."""
    t = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(t):
        pivot = next((r for r in range(col, t) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(t):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][t] for r in range(t)]


def tw_by_elimination(g: Graph) -> WidthValue:
    return ftw_by_elimination(g, size_width)


def ghw_by_elimination(h: Hypergraph) -> WidthValue:
    """Reference generalized hypertree-width: minimize over elimination
    orders of the primal graph, measuring bags by exhaustive cover search."""
    return ftw_by_elimination(gaifman(h), lambda x: min_cover_exhaustive(h, x))


def fhw_by_elimination(h: Hypergraph) -> WidthValue:
    """Reference fractional hypertree-width via basic-solution enumeration
    per elimination bag."""
    return ftw_by_elimination(gaifman(h), lambda x: lp_by_basic_solutions(build_cover_lp(h, x)))


def lp_by_basic_solutions(lp: CoverLp) -> Fraction:
    """Minimum of the covering LP over all basic feasible solutions, found
    by solving every square subsystem of tight rows against a support of
    columns; the all-ones point is included as a safety net."""
    nr, nc = len(lp.rows), len(lp.cols)
    if nr > LP_ROW_CAP or nc > LP_COL_CAP:
        raise CapacityExceeded(
            f"basic-solution oracle capped at {LP_ROW_CAP} rows / {LP_COL_CAP} columns"
        )
    a = [[Fraction(1) if lp.cols[j] & (1 << v) else Fraction(0) for j in range(nc)] for v in lp.rows]
    one = Fraction(1)
    best = Fraction(nc)  # all columns at weight one is always feasible
    for t in range(1, min(nr, nc) + 1):
        for support in combinations(range(nc), t):
            for tight in combinations(range(nr), t):
                sub = [[a[i][j] for j in support] for i in tight]
                sol = _solve_square(sub, [one] * t)
                if sol is None or any(v < 0 for v in sol):
                    continue
                weights = {j: sol[idx] for idx, j in enumerate(support)}
                obj = sum(sol)
                if obj >= best:
                    continue
                feasible = all(
                    sum(a[i][j] * weights[j] for j in support) >= 1 for i in range(nr)
                )
                if feasible:
                    best = obj
    return best
