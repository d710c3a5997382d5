"""Exact fractional edge covers restricted to a query set.

The covering program (minimize total edge weight so that every queried
vertex receives weight at least one) is solved through its packing dual
with a dense simplex over ``fractions.Fraction`` and Bland's rule, so the
reported optimum is an exact rational and never a rounded float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Hypergraph, VertexSet, bits
from .errors import ArithmeticOverflow, EmptyTrace

DEFAULT_BIT_BUDGET = 1 << 14


@dataclass(frozen=True)
class CoverLp:
    """Reduced covering LP for one query set.

    Rows are the queried vertices; columns are the distinct, non-dominated
    traces (edge intersected with the query set), each remembering one
    original edge index that produced it.
    """

    rows: tuple[int, ...]
    cols: tuple[VertexSet, ...]
    col_edges: tuple[int, ...]


@dataclass(frozen=True)
class LpSolution:
    optimum: Fraction
    weights: dict[int, Fraction]  # column index -> weight in [0, 1]
    dual: tuple[Fraction, ...]  # one value per row; feasible packing


def build_cover_lp(h: Hypergraph, omega: VertexSet) -> CoverLp:
    if omega == 0:
        raise ValueError("query set must be nonempty")
    trace_edge: dict[int, int] = {}
    for i, e in enumerate(h.edges):
        t = e & omega
        if t and t not in trace_edge:
            trace_edge[t] = i
    covered = 0
    for t in trace_edge:
        covered |= t
    if covered != omega:
        missing = next(bits(omega & ~covered))
        raise EmptyTrace(f"vertex {h.names[missing]!r} of the query set lies in no hyperedge")
    # Drop traces contained in another trace; they never appear in an optimum.
    by_size = sorted(trace_edge, key=lambda t: (-t.bit_count(), t))
    kept: list[int] = []
    for t in by_size:
        if not any(t & ~big == 0 for big in kept):
            kept.append(t)
    kept.sort()
    return CoverLp(
        rows=tuple(bits(omega)),
        cols=tuple(kept),
        col_edges=tuple(trace_edge[t] for t in kept),
    )


def _assert_small(fracs, bit_budget: int):
    for q in fracs:
        if q.numerator.bit_length() > bit_budget or q.denominator.bit_length() > bit_budget:
            raise ArithmeticOverflow(f"rational magnitude exceeded {bit_budget} bits")


def solve_cover_lp(lp: CoverLp, bit_budget: int = DEFAULT_BIT_BUDGET) -> LpSolution:
    """Exact optimum of the covering LP together with optimal weights and a
    matching feasible packing (the dual certificate)."""
    nr = len(lp.rows)
    nt = len(lp.cols)
    omega = 0
    for v in lp.rows:
        omega |= 1 << v

    # One trace covering every row pins the optimum at exactly one.
    for ci, t in enumerate(lp.cols):
        if t == omega:
            weights = {c: Fraction(0) for c in range(nt)}
            weights[ci] = Fraction(1)
            dual = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(nr))
            return LpSolution(Fraction(1), weights, dual)

    # Packing dual: maximize sum(y_v) subject to, per trace, sum over its
    # vertices of y_v <= 1 and y >= 0. Slack basis is feasible at y = 0.
    row_of = {v: i for i, v in enumerate(lp.rows)}
    ncols = nr + nt
    zero = Fraction(0)
    one = Fraction(1)
    tableau: list[list[Fraction]] = []
    for ti, t in enumerate(lp.cols):
        row = [zero] * ncols
        for v in bits(t):
            row[row_of[v]] = one
        row[nr + ti] = one
        tableau.append(row)
    rhs = [one] * nt
    reduced = [one] * nr + [zero] * nt  # c_j minus z_j under the slack basis
    value = zero
    basis = list(range(nr, ncols))

    while True:
        enter = -1
        for j in range(ncols):
            if reduced[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(nt):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = rhs[i] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise AssertionError("packing dual is bounded by construction")
        piv = tableau[leave][enter]
        prow = [x / piv for x in tableau[leave]]
        tableau[leave] = prow
        rhs[leave] /= piv
        for i in range(nt):
            if i != leave and tableau[i][enter] != 0:
                factor = tableau[i][enter]
                tableau[i] = [a - factor * b for a, b in zip(tableau[i], prow)]
                rhs[i] -= factor * rhs[leave]
        factor = reduced[enter]
        reduced = [a - factor * b for a, b in zip(reduced, prow)]
        value += factor * rhs[leave]
        basis[leave] = enter
        _assert_small(reduced, bit_budget)
        _assert_small(rhs, bit_budget)

    # Covering weights are the negated reduced costs of the slack columns;
    # the packing certificate is the basic solution itself.
    weights = {t: -reduced[nr + t] for t in range(nt)}
    dual_vals = [zero] * nr
    for i, bv in enumerate(basis):
        if bv < nr:
            dual_vals[bv] = rhs[i]

    total = sum(weights.values(), zero)
    if total != value:
        raise AssertionError("primal/dual objective mismatch at termination")
    for v in lp.rows:
        got = sum(weights[t] for t in range(nt) if lp.cols[t] & (1 << v))
        if got < 1:
            raise AssertionError("returned cover weights are infeasible")
    for t in range(nt):
        if weights[t] > 1:
            # Cannot happen at an exact optimum; capping would then be lossy.
            raise AssertionError("optimal cover weight above one")
    return LpSolution(value, weights, tuple(dual_vals))
