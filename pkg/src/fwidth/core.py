"""Hypergraph and graph data model on bitset vertex sets.

Vertex sets are plain Python ints used as bitmasks: bit ``i`` is vertex ``i``.
All set algebra is therefore word-parallel, and every iteration helper walks
bits in ascending vertex order, which downstream code relies on for
reproducible tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import (
    CapacityExceeded,
    EdgeUncovered,
    IsolatedVertexError,
    NotATree,
    SubtreeDisconnected,
    VertexUncovered,
)

# Two 64-bit words; beyond this the exponential enumeration dominates anyway.
MAX_VERTICES = 128

VertexSet = int  # bitmask alias used in signatures for readability


def bits(mask: VertexSet) -> Iterator[int]:
    """Yield the members of a vertex set in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_tuple(mask: VertexSet) -> tuple[int, ...]:
    return tuple(bits(mask))


def mask_of(vertices: Iterable[int]) -> VertexSet:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def universe(n: int) -> VertexSet:
    return (1 << n) - 1


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph with deduplicated, non-empty edges and no
    isolated vertices. ``names`` maps internal ids to external tokens."""

    n: int
    edges: tuple[VertexSet, ...]
    names: tuple[str, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @staticmethod
    def build(n: int, edges: Sequence[VertexSet], names: Optional[Sequence[str]] = None) -> "Hypergraph":
        if n < 1:
            raise ValueError("hypergraph needs at least one vertex")
        if n > MAX_VERTICES:
            raise CapacityExceeded(f"{n} vertices exceed the {MAX_VERTICES}-vertex capacity")
        if names is None:
            names = tuple(str(i + 1) for i in range(n))
        else:
            names = tuple(names)
            if len(names) != n:
                raise ValueError("name table length must equal the vertex count")
        full = universe(n)
        seen: set[int] = set()
        dedup: list[int] = []
        covered = 0
        for e in edges:
            if e == 0:
                raise ValueError("empty hyperedge")
            if e & ~full:
                raise ValueError("hyperedge mentions a vertex outside the universe")
            if e not in seen:
                seen.add(e)
                dedup.append(e)
                covered |= e
        if covered != full:
            missing = next(bits(full & ~covered))
            raise IsolatedVertexError(names[missing])
        return Hypergraph(n, tuple(dedup), names)

    @staticmethod
    def from_vertex_lists(n: int, edge_lists: Sequence[Iterable[int]], names: Optional[Sequence[str]] = None) -> "Hypergraph":
        return Hypergraph.build(n, [mask_of(e) for e in edge_lists], names)

    def name_of(self, v: int) -> str:
        return self.names[v]


@dataclass(frozen=True)
class Graph:
    """Simple graph as one neighborhood bitmask per vertex."""

    n: int
    adj: tuple[VertexSet, ...]

    def __post_init__(self):
        for v, nb in enumerate(self.adj):
            if nb >> self.n:
                raise ValueError("adjacency outside the universe")
            if nb & (1 << v):
                raise ValueError("self-loop")
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if not self.adj[u] & (1 << v):
                    raise ValueError("asymmetric adjacency")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in pairs:
            if u == v:
                raise ValueError("self-loop")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def neighborhood(self, region: VertexSet) -> VertexSet:
        """Open neighborhood N(region)."""
        nb = 0
        for v in bits(region):
            nb |= self.adj[v]
        return nb & ~region

    def is_clique(self, region: VertexSet) -> bool:
        for v in bits(region):
            rest = region & ~(1 << v)
            if rest & ~self.adj[v]:
                return False
        return True

    def is_complete(self) -> bool:
        return self.is_clique(universe(self.n))


def gaifman(h: Hypergraph) -> Graph:
    """Primal graph: two vertices are adjacent iff some hyperedge holds both."""
    adj = [0] * h.n
    for e in h.edges:
        for v in bits(e):
            adj[v] |= e
    for v in range(h.n):
        adj[v] &= ~(1 << v)
    return Graph(h.n, tuple(adj))


def two_section_hypergraph(g: Graph) -> Hypergraph:
    """The graph viewed as a 2-uniform hypergraph (singleton edges for
    isolated vertices, so the result stays a valid hypergraph)."""
    edges = []
    for v in range(g.n):
        if g.adj[v] == 0:
            edges.append(1 << v)
        else:
            for u in bits(g.adj[v]):
                if u > v:
                    edges.append((1 << v) | (1 << u))
    return Hypergraph.build(g.n, edges)


def components(g: Graph, removed: VertexSet) -> list[VertexSet]:
    """Connected components of G - removed, ordered by smallest member."""
    adj = g.adj
    remaining = universe(g.n) & ~removed
    out: list[VertexSet] = []
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                nxt |= adj[low.bit_length() - 1]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


def component_containing(g: Graph, removed: VertexSet, v: int) -> VertexSet:
    """The connected component of G - removed that contains v."""
    adj = g.adj
    remaining = universe(g.n) & ~removed
    comp = 1 << v
    frontier = comp
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            f ^= low
            nxt |= adj[low.bit_length() - 1]
        nxt &= remaining & ~comp
        comp |= nxt
        frontier = nxt
    return comp


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of bags. ``per_bag_width`` is filled by the solver and may be
    None on decompositions re-read from text."""

    bags: tuple[VertexSet, ...]
    tree_edges: tuple[tuple[int, int], ...]
    per_bag_width: Optional[tuple] = None

    @property
    def bag_count(self) -> int:
        return len(self.bags)

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb


def _check_tree(td: TreeDecomposition) -> list[list[int]]:
    k = td.bag_count
    if k == 0:
        raise NotATree("decomposition has no bags")
    if len(td.tree_edges) != k - 1:
        raise NotATree(f"{k} bags need {k - 1} tree edges, got {len(td.tree_edges)}")
    seen = set()
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            raise NotATree(f"bad tree edge ({a}, {b})")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise NotATree(f"duplicate tree edge ({a}, {b})")
        seen.add(key)
    nb = td.neighbors()
    visited = [False] * k
    stack = [0]
    visited[0] = True
    count = 1
    while stack:
        t = stack.pop()
        for u in nb[t]:
            if not visited[u]:
                visited[u] = True
                count += 1
                stack.append(u)
    if count != k:
        raise NotATree("tree edges do not connect all bags")
    return nb


def validate_decomposition(h: Hypergraph, td: TreeDecomposition, f: Callable[[VertexSet], object]):
    """Check the three decomposition conditions against ``h`` and return the
    f-width (max of ``f`` over bags). Raises a DecompositionError naming the
    first witness found."""
    nb = _check_tree(td)
    full = universe(h.n)

    covered = 0
    for bag in td.bags:
        if bag & ~full:
            raise NotATree("bag mentions a vertex outside the hypergraph")
        covered |= bag
    if covered != full:
        v = next(bits(full & ~covered))
        raise VertexUncovered(v, h.names[v])

    for i, e in enumerate(h.edges):
        if not any(e & ~bag == 0 for bag in td.bags):
            raise EdgeUncovered(i, tuple(h.names[v] for v in bits(e)))

    for v in range(h.n):
        holders = [t for t, bag in enumerate(td.bags) if bag & (1 << v)]
        holder_set = set(holders)
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            t = stack.pop()
            for u in nb[t]:
                if u in holder_set and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(holders):
            raise SubtreeDisconnected(v, h.names[v])

    width = f(td.bags[0])
    for bag in td.bags[1:]:
        w = f(bag)
        if w > width:
            width = w
    return width
