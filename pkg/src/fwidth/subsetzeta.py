"""Fast zeta transform over the subset lattice and the inclusion-exclusion
edge-cover counting tables built on top of it.

All tables are dense arrays of length 2^n indexed by vertex-set bitmask and
hold exact (arbitrary-precision) integers; intermediate values of the signed
sweep may be negative even though the final cover counts are not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Hypergraph, universe
from .errors import CapacityExceeded

# 2^26 big-integer cells is the default memory ceiling for this pathway;
# callers fall back to per-query dynamic programming beyond it.
DEFAULT_TABLE_CAP = 26


@dataclass
class SubsetTable:
    """Dense table over all subsets of an n-element ground set."""

    n: int
    values: list[int]

    def __post_init__(self):
        if len(self.values) != 1 << self.n:
            raise ValueError("table length must be 2^n")

    def __getitem__(self, mask: int) -> int:
        return self.values[mask]


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapacityExceeded(f"subset table for n={n} exceeds the cap of {cap}")


def fast_zeta(t: SubsetTable, cap: int = DEFAULT_TABLE_CAP) -> SubsetTable:
    """Subset sums of ``t``: output[Y] = sum of t[S] over S subseteq Y.

    Yates's sweep, one pass per ground element; 2^(n-1) * n additions.
    """
    _check_cap(t.n, cap)
    vals = list(t.values)
    size = len(vals)
    step = 1
    while step < size:
        block = step << 1
        for lo in range(step, size, block):
            hi = lo + step
            vals[lo:hi] = [a + b for a, b in zip(vals[lo - step:lo], vals[lo:hi])]
        step = block
    return SubsetTable(t.n, vals)


def avoiders_table(h: Hypergraph, cap: int = DEFAULT_TABLE_CAP) -> SubsetTable:
    """a(X) = number of distinct hyperedges disjoint from X, for every X.

    One zeta transform of the edge indicator, then index reversal:
    a(X) equals the subset sum of the indicator over the complement of X.
    """
    _check_cap(h.n, cap)
    size = 1 << h.n
    indicator = [0] * size
    for e in h.edges:
        indicator[e] = 1
    hat = fast_zeta(SubsetTable(h.n, indicator), cap)
    full = universe(h.n)
    return SubsetTable(h.n, [hat.values[full ^ x] for x in range(size)])


def cover_count_table(h: Hypergraph, k: int, cap: int = DEFAULT_TABLE_CAP) -> SubsetTable:
    """Number of length-k hyperedge sequences whose union covers U, for all U.

    Inclusion-exclusion over avoiding edges: the table is the zeta transform
    of g(X) = (-1)^|X| * a(X)^k. Positivity, not the raw count, is the signal
    consumed by the cover-decision machinery.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    _check_cap(h.n, cap)
    avoid = avoiders_table(h, cap).values
    size = 1 << h.n
    signed = [0] * size
    for x in range(size):
        p = avoid[x] ** k
        signed[x] = -p if x.bit_count() & 1 else p
    table = fast_zeta(SubsetTable(h.n, signed), cap)
    if min(table.values) < 0:
        raise AssertionError("cover counts must be nonnegative; zeta sweep is broken")
    return table
