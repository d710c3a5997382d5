"""The central solver: a dynamic program over full blocks and potential
maximal cliques that computes the optimum width of a graph for any monotone
width function, plus reconstruction of an optimal tree decomposition and the
hypergraph entry point through the primal-graph reduction.

Every full block is processed in ascending key size, so the value of a block
only ever reads values of strictly smaller blocks. Each block's value is the
minimum over its compatible potential maximal cliques of the maximum of the
clique's width and the values of the sub-blocks the clique leaves inside the
block; the graph optimum combines the blocks of inclusion-minimal separators.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Union

from . import decompose, intcover
from .core import (
    Graph,
    Hypergraph,
    TreeDecomposition,
    VertexSet,
    bits,
    components,
    gaifman,
    two_section_hypergraph,
    universe,
    validate_decomposition,
)
from .decompose import Block, PmcList, SeparatorList
from .errors import InternalInfeasible
from .subsetzeta import DEFAULT_TABLE_CAP
from .widthfn import (
    INFINITY,
    WidthFunction,
    WidthTable,
    WidthValue,
    build_width_table,
    fractional_cover_function,
    integral_cover_function,
    size_width_function,
)


@dataclass
class Limits:
    """Capacity knobs surfaced on the CLI."""

    max_separators: int = decompose.DEFAULT_SEPARATOR_LIMIT
    max_pmcs: int = decompose.DEFAULT_PMC_LIMIT
    zeta_cap: int = DEFAULT_TABLE_CAP


@dataclass
class SolveStats:
    vertex_count: int = 0
    edge_count: int = 0
    separators: int = 0
    inclusion_minimal: int = 0
    pmcs: int = 0
    full_blocks: int = 0
    f_evaluations: int = 0
    decision_runs: int = 0
    wall_seconds: float = 0.0
    phase_seconds: dict = field(default_factory=dict)

    def add_phase(self, name: str, seconds: float):
        self.phase_seconds[name] = self.phase_seconds.get(name, 0.0) + seconds


@dataclass
class SolveResult:
    width: WidthValue
    decomposition: TreeDecomposition
    stats: SolveStats
    measure: str


@dataclass
class GraphFacts:
    """Everything the block DP needs, computed once per connected graph."""

    g: Graph
    seps: SeparatorList
    pmcs: PmcList
    blocks: list[Block]
    sep_components: dict[int, list[VertexSet]]
    assoc: dict[int, list[tuple[int, int]]]
    candidates: dict[tuple[int, int], list[int]]


def compute_graph_facts(g: Graph, limits: Optional[Limits] = None) -> GraphFacts:
    """Enumerate separators, potential maximal cliques, and full blocks, and
    index every clique against the full blocks it can realize."""
    limits = limits or Limits()
    seps = decompose.enumerate_minimal_separators(g, limits.max_separators)
    pmcs = decompose.enumerate_pmcs(g, seps, limits.max_pmcs)
    blocks = decompose.full_blocks(g, seps)

    sep_components: dict[int, list[VertexSet]] = {
        sep: components(g, sep) for sep in seps.separators
    }
    full_keys = {(b.separator, b.component) for b in blocks}

    assoc: dict[int, list[tuple[int, int]]] = {}
    candidates: dict[tuple[int, int], list[int]] = {key: [] for key in full_keys}
    for omega in pmcs.pmcs:
        pairs = [
            (g.neighborhood(comp), comp) for comp in components(g, omega)
        ]
        assoc[omega] = pairs
        # The separators properly contained in a potential maximal clique are
        # exactly the component neighborhoods; pair the clique with the one
        # full block per separator whose component holds the clique remainder.
        for sep in {s for s, _ in pairs}:
            rest = omega & ~sep
            if rest == 0:
                raise InternalInfeasible("potential maximal clique equals a separator")
            comps = sep_components.get(sep)
            if comps is None:
                raise InternalInfeasible("clique separator missing from the separator list")
            target = rest & -rest
            for comp in comps:
                if comp & target:
                    if omega & ~(sep | comp) == 0 and (sep, comp) in full_keys:
                        candidates[(sep, comp)].append(omega)
                    break
    return GraphFacts(g, seps, pmcs, blocks, sep_components, assoc, candidates)


def _dp(facts: GraphFacts, table: WidthTable) -> tuple[WidthValue, dict, VertexSet]:
    """Run the block DP; returns the optimum, the chosen clique per block,
    and the inclusion-minimal separator attaining the optimum."""
    values: dict[tuple[int, int], WidthValue] = {}
    choice: dict[tuple[int, int], int] = {}
    for block in facts.blocks:
        key = (block.separator, block.component)
        best: WidthValue = INFINITY
        best_omega = -1
        for omega in facts.candidates[key]:
            val = table.get(omega)
            if not val < best:
                continue
            for sub_sep, sub_comp in facts.assoc[omega]:
                if sub_comp & ~block.component == 0:
                    sub_val = values.get((sub_sep, sub_comp))
                    if sub_val is None:
                        raise InternalInfeasible("sub-block evaluated before its block")
                    if sub_val > val:
                        val = sub_val
                        if not val < best:
                            break
            if val < best:
                best = val
                best_omega = omega
        if best is INFINITY:
            raise InternalInfeasible(
                "a full block admits no potential maximal clique; enumeration is incomplete"
            )
        values[key] = best
        choice[key] = best_omega

    optimum: WidthValue = INFINITY
    chosen_root = -1
    for sep in facts.seps.minimal_only():
        worst: WidthValue = -1
        for comp in facts.sep_components[sep]:
            v = values.get((sep, comp))
            if v is None:
                raise InternalInfeasible("inclusion-minimal separator has a non-full component")
            if v > worst:
                worst = v
        if worst < optimum:
            optimum = worst
            chosen_root = sep
    if optimum is INFINITY:
        raise InternalInfeasible("no inclusion-minimal separator found in a non-complete graph")
    return optimum, choice, chosen_root


def reconstruct_decomposition(
    facts: GraphFacts, choice: dict, chosen_root: VertexSet
) -> tuple[list[VertexSet], list[tuple[int, int]]]:
    """Bags and tree edges realizing the DP optimum: the root bag is the
    chosen inclusion-minimal separator, and every block contributes the
    clique the DP selected for it, wired beneath its parent clique."""
    bags: list[VertexSet] = [chosen_root]
    edges: list[tuple[int, int]] = []
    stack: list[tuple[int, tuple[int, int]]] = []
    for comp in reversed(facts.sep_components[chosen_root]):
        stack.append((0, (chosen_root, comp)))
    while stack:
        parent, key = stack.pop()
        omega = choice[key]
        node = len(bags)
        bags.append(omega)
        edges.append((parent, node))
        for sub_sep, sub_comp in reversed(facts.assoc[omega]):
            if sub_comp & ~key[1] == 0:
                stack.append((node, (sub_sep, sub_comp)))
    return bags, edges


def _prune_bags(
    bags: list[VertexSet], edges: list[tuple[int, int]]
) -> tuple[list[VertexSet], list[tuple[int, int]]]:
    """Contract any bag contained in a neighbor; never changes the width."""
    neighbor: list[set[int]] = [set() for _ in bags]
    for a, b in edges:
        neighbor[a].add(b)
        neighbor[b].add(a)
    alive = [True] * len(bags)
    changed = True
    while changed:
        changed = False
        for t in range(len(bags)):
            if not alive[t]:
                continue
            for u in sorted(neighbor[t]):
                if bags[t] & ~bags[u] == 0 and (bags[t] != bags[u] or t > u):
                    for w in neighbor[t]:
                        neighbor[w].discard(t)
                        if w != u:
                            neighbor[w].add(u)
                            neighbor[u].add(w)
                    neighbor[u].discard(u)
                    neighbor[t] = set()
                    alive[t] = False
                    changed = True
                    break
            if changed:
                break
    index = {}
    kept: list[VertexSet] = []
    for t, ok in enumerate(alive):
        if ok:
            index[t] = len(kept)
            kept.append(bags[t])
    new_edges = sorted(
        (min(index[a], index[b]), max(index[a], index[b]))
        for a in index
        for b in neighbor[a]
        if a < b
    )
    return kept, new_edges


@dataclass
class _Piece:
    """One connected component of the graph under solve, in local ids."""

    vertex_map: list[int]  # local id -> global id
    graph: Graph
    facts: Optional[GraphFacts] = None

    def to_global(self, mask: VertexSet) -> VertexSet:
        out = 0
        for b in bits(mask):
            out |= 1 << self.vertex_map[b]
        return out

    def localize(self, f: WidthFunction) -> WidthFunction:
        if self.vertex_map == list(range(self.graph.n)):
            return f
        return WidthFunction(f.tag, lambda m: f(self.to_global(m)))


def _make_piece(g: Graph, comp: VertexSet) -> _Piece:
    vmap = list(bits(comp))
    if comp == universe(g.n):
        return _Piece(vmap, g)
    back = {v: i for i, v in enumerate(vmap)}
    adj = []
    for v in vmap:
        local = 0
        for u in bits(g.adj[v] & comp):
            local |= 1 << back[u]
        adj.append(local)
    return _Piece(vmap, Graph(len(vmap), tuple(adj)))


def _solve_piece(
    piece: _Piece,
    f: WidthFunction,
    stats: SolveStats,
    limits: Limits,
    threads: int,
    value_only: bool = False,
) -> tuple[WidthValue, Optional[tuple[list[VertexSet], list[tuple[int, int]]]]]:
    g = piece.graph
    full = universe(g.n)
    f_local = piece.localize(f)
    if g.is_complete():
        width = f_local(full)
        stats.f_evaluations += 1
        return width, None if value_only else ([full], [])

    if piece.facts is None:
        t0 = time.perf_counter()
        piece.facts = compute_graph_facts(g, limits)
        stats.add_phase("enumerate", time.perf_counter() - t0)
        stats.separators += len(piece.facts.seps.separators)
        stats.inclusion_minimal += sum(piece.facts.seps.inclusion_minimal)
        stats.pmcs += len(piece.facts.pmcs.pmcs)
        stats.full_blocks += len(piece.facts.blocks)
    facts = piece.facts

    t0 = time.perf_counter()
    table = build_width_table(f_local, facts.pmcs.pmcs, (), threads)
    stats.add_phase("table", time.perf_counter() - t0)

    t0 = time.perf_counter()
    optimum, choice, root = _dp(facts, table)
    stats.add_phase("dp", time.perf_counter() - t0)
    stats.f_evaluations += table.evaluations

    if value_only:
        return optimum, None
    t0 = time.perf_counter()
    bags, edges = reconstruct_decomposition(facts, choice, root)
    bags, edges = _prune_bags(bags, edges)
    stats.add_phase("reconstruct", time.perf_counter() - t0)
    return optimum, (bags, edges)


def solve_graph(
    g: Graph,
    f: WidthFunction,
    threads: int = 1,
    limits: Optional[Limits] = None,
) -> SolveResult:
    """Optimum f-width of a connected graph with a verified decomposition."""
    if g.n == 0:
        raise ValueError("empty graph")
    if len(components(g, 0)) != 1:
        raise ValueError("solve_graph expects a connected graph; split components first")
    limits = limits or Limits()
    start = time.perf_counter()
    stats = SolveStats(vertex_count=g.n, edge_count=g.edge_count())
    piece = _Piece(list(range(g.n)), g)
    width, built = _solve_piece(piece, f, stats, limits, threads)
    bags, edges = built
    per_bag = tuple(f(b) for b in bags)
    td = TreeDecomposition(tuple(bags), tuple(edges), per_bag)
    stats.wall_seconds = time.perf_counter() - start
    result = SolveResult(width, td, stats, f.tag)
    _check_result(decompose_graph_hypergraph(g), result, f)
    return result


def decompose_graph_hypergraph(g: Graph) -> Hypergraph:
    """View a graph as the hypergraph of its edges so that the shared
    decomposition validator applies."""
    return two_section_hypergraph(g)


def _check_result(h: Hypergraph, result: SolveResult, f: WidthFunction):
    achieved = validate_decomposition(h, result.decomposition, f)
    if achieved != result.width:
        raise InternalInfeasible(
            f"decomposition width {achieved!r} disagrees with the optimum {result.width!r}"
        )


def _join_pieces(
    parts: list[tuple[list[VertexSet], list[tuple[int, int]]]],
    to_global,
) -> tuple[list[VertexSet], list[tuple[int, int]]]:
    bags: list[VertexSet] = []
    edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for (pbags, pedges), expand in zip(parts, to_global):
        offset = len(bags)
        roots.append(offset)
        bags.extend(expand(b) for b in pbags)
        edges.extend((a + offset, b + offset) for a, b in pedges)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return bags, edges


def solve_hypergraph(
    h: Hypergraph,
    measure: Union[str, WidthFunction],
    threads: int = 1,
    limits: Optional[Limits] = None,
) -> SolveResult:
    """Optimum width of a hypergraph for the requested measure (``tw``,
    ``ghw``, ``fhw``, or a custom monotone width function), together with an
    optimal tree decomposition validated against the input."""
    limits = limits or Limits()
    start = time.perf_counter()
    stats = SolveStats(vertex_count=h.n, edge_count=h.m)

    t0 = time.perf_counter()
    g = gaifman(h)
    stats.add_phase("gaifman", time.perf_counter() - t0)
    pieces = [_make_piece(g, comp) for comp in components(g, 0)]

    if isinstance(measure, WidthFunction):
        f = measure
    elif measure == "tw":
        f = size_width_function()
    elif measure == "fhw":
        f = fractional_cover_function(h)
    elif measure == "ghw":
        f = integral_cover_function(h)
    else:
        raise ValueError(f"unknown measure {measure!r}")

    piece_widths: list[WidthValue] = []
    parts = []
    if measure == "ghw":
        for piece in pieces:
            def decide(fk: WidthFunction, piece=piece) -> WidthValue:
                stats.decision_runs += 1
                val, _ = _solve_piece(piece, fk, stats, limits, threads, value_only=True)
                return val

            k = intcover.ghw_binary_search(h, decide, limits.zeta_cap)
            _, built = _solve_piece(
                piece, intcover.coverability_width_function(h, k, limits.zeta_cap),
                stats, limits, threads,
            )
            parts.append(built)
            piece_widths.append(k)
    else:
        for piece in pieces:
            piece_width, built = _solve_piece(piece, f, stats, limits, threads)
            parts.append(built)
            piece_widths.append(piece_width)
    width = piece_widths[0]
    for w in piece_widths[1:]:
        if w > width:
            width = w

    bags, edges = _join_pieces(parts, [p.to_global for p in pieces])
    per_bag = tuple(f(b) for b in bags)
    td = TreeDecomposition(tuple(bags), tuple(edges), per_bag)
    result = SolveResult(width, td, stats, f.tag)

    t0 = time.perf_counter()
    _check_result(h, result, f)
    stats.add_phase("validate", time.perf_counter() - t0)
    stats.wall_seconds = time.perf_counter() - start
    return result


def solve(h: Hypergraph, measure: Union[str, WidthFunction], **kwargs) -> SolveResult:
    return solve_hypergraph(h, measure, **kwargs)
