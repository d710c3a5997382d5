"""Enumeration of minimal separators, full blocks, and potential maximal
cliques of a connected graph.

Separators come from a breadth-first closure: seed with the neighborhoods of
the components left by deleting each closed vertex neighborhood, then expand
every separator through each of its vertices. Potential maximal cliques are
generated from the separator list (a separator plus one vertex, or a
separator plus the part of another separator inside one of its components)
and certified by the combinatorial predicate ``is_pmc``, so a spurious
candidate can never leak into the solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Graph, VertexSet, bits, components, universe, vertex_tuple
from .errors import CapacityExceeded

DEFAULT_SEPARATOR_LIMIT = 1_000_000
DEFAULT_PMC_LIMIT = 2_000_000


@dataclass(frozen=True)
class Block:
    """A separator together with one connected component of its removal."""

    separator: VertexSet
    component: VertexSet
    full: bool

    @property
    def key(self) -> VertexSet:
        return self.separator | self.component


@dataclass(frozen=True)
class SeparatorList:
    separators: tuple[VertexSet, ...]
    inclusion_minimal: tuple[bool, ...]

    def minimal_only(self) -> tuple[VertexSet, ...]:
        return tuple(s for s, flag in zip(self.separators, self.inclusion_minimal) if flag)


@dataclass(frozen=True)
class PmcList:
    pmcs: tuple[VertexSet, ...]


def _is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components(g, 0)) == 1


def enumerate_minimal_separators(g: Graph, limit: int = DEFAULT_SEPARATOR_LIMIT) -> SeparatorList:
    """All minimal separators of a connected graph, each flagged when no
    other minimal separator is properly contained in it."""
    if not _is_connected(g):
        raise ValueError("separator enumeration expects a connected graph")
    adj = g.adj
    seen: set[int] = set()
    queue: list[int] = []

    def push(candidate: int):
        if candidate and candidate not in seen:
            seen.add(candidate)
            queue.append(candidate)
            if len(seen) > limit:
                raise CapacityExceeded(f"separator list exceeded the budget of {limit}")

    for v in range(g.n):
        closed = adj[v] | (1 << v)
        for comp in components(g, closed):
            push(g.neighborhood(comp))
    head = 0
    while head < len(queue):
        sep = queue[head]
        head += 1
        for x in bits(sep):
            blocked = sep | adj[x]
            for comp in components(g, blocked):
                push(g.neighborhood(comp))

    # Keep only true minimal separators (at least two full components); the
    # closure should produce nothing else, so this is a cheap safety filter.
    confirmed: list[int] = []
    for sep in seen:
        fulls = 0
        for comp in components(g, sep):
            if g.neighborhood(comp) == sep:
                fulls += 1
                if fulls >= 2:
                    break
        if fulls >= 2:
            confirmed.append(sep)
    confirmed.sort(key=lambda s: (s.bit_count(), vertex_tuple(s)))

    flags: list[bool] = []
    minimal_so_far: list[int] = []
    for sep in confirmed:
        contained = any(small != sep and small & ~sep == 0 for small in minimal_so_far)
        flags.append(not contained)
        if not contained:
            minimal_so_far.append(sep)
    return SeparatorList(tuple(confirmed), tuple(flags))


def is_pmc(g: Graph, omega: VertexSet) -> bool:
    """Combinatorial membership test for potential maximal cliques: the
    removal of the set leaves no full component, and every non-adjacent pair
    inside the set is connected through some component's neighborhood."""
    if omega == 0:
        raise ValueError("candidate must be nonempty")
    neighborhoods = [g.neighborhood(comp) for comp in components(g, omega)]
    for nb in neighborhoods:
        if nb == omega:
            return False
    for u in bits(omega):
        bit = 1 << u
        reach = g.adj[u]
        for nb in neighborhoods:
            if nb & bit:
                reach |= nb
        if omega & ~reach & ~bit:
            return False
    return True


def enumerate_pmcs(g: Graph, seps: SeparatorList, limit: int = DEFAULT_PMC_LIMIT) -> PmcList:
    """All potential maximal cliques of a connected graph, given its
    minimal separators."""
    if not _is_connected(g):
        raise ValueError("pmc enumeration expects a connected graph")
    full = universe(g.n)
    if g.is_complete():
        return PmcList((full,))
    candidates: set[int] = set()

    def grow(c: int):
        candidates.add(c)
        if len(candidates) > limit:
            raise CapacityExceeded(f"pmc candidate set exceeded the budget of {limit}")

    sep_list = seps.separators
    for sep in sep_list:
        outside = full & ~sep
        for x in bits(outside):
            grow(sep | (1 << x))
        for comp in components(g, sep):
            for other in sep_list:
                trace = other & comp
                if trace:
                    grow(sep | trace)

    confirmed = [c for c in candidates if is_pmc(g, c)]
    confirmed.sort(key=lambda p: (p.bit_count(), vertex_tuple(p)))
    return PmcList(tuple(confirmed))


def full_blocks(g: Graph, seps: SeparatorList) -> list[Block]:
    """Every full block, sorted ascending by the size of separator plus
    component with a fixed lexicographic tie-break."""
    out: list[Block] = []
    for sep in seps.separators:
        for comp in components(g, sep):
            if g.neighborhood(comp) == sep:
                out.append(Block(sep, comp, True))
    out.sort(key=lambda b: (b.key.bit_count(), vertex_tuple(b.key), vertex_tuple(b.separator)))
    return out


def pmc_associated_blocks(g: Graph, omega: VertexSet) -> list[Block]:
    """The full blocks associated with a potential maximal clique: one per
    component left by removing it."""
    return [Block(g.neighborhood(comp), comp, True) for comp in components(g, omega)]


def blocks_of_pmc_within(g: Graph, omega: VertexSet, outer: Block) -> list[Block]:
    """The blocks associated with ``omega`` that live inside one outer
    block, which is what the solver recursion consumes."""
    return [b for b in pmc_associated_blocks(g, omega) if b.component & ~outer.component == 0]
