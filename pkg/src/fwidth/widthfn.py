"""Monotone width functions and the memoized evaluation table the solver
consumes.

Width values are exact: Python ints, ``fractions.Fraction``, and a single
positive-infinity sentinel. Nothing in the comparison chain ever touches a
float, which the min/max recurrences of the solver depend on.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Union

from .core import Hypergraph, VertexSet
from . import intcover, lpcover


class _InfiniteWidth:
    """Top element of the width order; compares above every exact value."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INFINITY

    def __gt__(self, other):
        return other is not INFINITY

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is INFINITY

    __hash__ = object.__hash__

    def __repr__(self):
        return "infinite-width"


INFINITY = _InfiniteWidth()

WidthValue = Union[int, Fraction, _InfiniteWidth]


@dataclass(frozen=True)
class WidthFunction:
    """Evaluation contract for a monotone width measure.

    ``evaluate`` must be pure and deterministic, and must satisfy
    f(X) <= f(Y) whenever X is a subset of Y; every built-in does.
    """

    tag: str
    evaluate: Callable[[VertexSet], WidthValue]

    def __call__(self, bag: VertexSet) -> WidthValue:
        return self.evaluate(bag)


def size_width(x: VertexSet) -> int:
    """|X| - 1; yields tree-width when used as the measure."""
    return x.bit_count() - 1


def integral_cover_width(h: Hypergraph, x: VertexSet) -> int:
    """Minimum number of hyperedges covering X."""
    return intcover.rho_of_set(h, x)


def fractional_cover_width(h: Hypergraph, x: VertexSet) -> Fraction:
    """Exact optimum of the fractional edge-cover LP restricted to X."""
    if x == 0:
        return Fraction(0)
    lp = lpcover.build_cover_lp(h, x)
    return lpcover.solve_cover_lp(lp).optimum


def size_width_function() -> WidthFunction:
    return WidthFunction("tw", size_width)


def integral_cover_function(h: Hypergraph) -> WidthFunction:
    return intcover.integral_cover_function(h)


def fractional_cover_function(h: Hypergraph) -> WidthFunction:
    memo: dict[int, Fraction] = {}

    def evaluate(x: VertexSet) -> Fraction:
        r = memo.get(x)
        if r is None:
            r = memo[x] = fractional_cover_width(h, x)
        return r

    return WidthFunction("fhw", evaluate)


def custom_width_function(tag: str, evaluate: Callable[[VertexSet], WidthValue]) -> WidthFunction:
    """Wrap a user-supplied monotone evaluator. Values must be exact
    (int or Fraction); arbitrary reals are outside the public API."""
    return WidthFunction(tag, evaluate)


@dataclass
class WidthTable:
    """Memo of width values keyed by vertex set."""

    fn: WidthFunction
    values: dict[int, WidthValue] = field(default_factory=dict)
    evaluations: int = 0
    hits: int = 0

    def get(self, key: VertexSet) -> WidthValue:
        v = self.values.get(key)
        if v is None:
            v = self.values[key] = self.fn(key)
            self.evaluations += 1
        else:
            self.hits += 1
        return v


def build_width_table(
    f: WidthFunction,
    pmcs: Iterable[VertexSet],
    final_keys: Iterable[VertexSet] = (),
    threads: int = 1,
) -> WidthTable:
    """Pre-evaluate ``f`` at every potential maximal clique plus any extra
    keys (the whole vertex set for complete components). Evaluation may run
    on a thread pool; results are keyed by mask so the table is identical
    for every schedule."""
    keys: list[int] = []
    seen: set[int] = set()
    for key in list(pmcs) + list(final_keys):
        if key not in seen:
            seen.add(key)
            keys.append(key)
    table = WidthTable(f)
    if threads > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for key, val in zip(keys, pool.map(f.evaluate, keys)):
                table.values[key] = val
    else:
        for key in keys:
            table.values[key] = f(key)
    table.evaluations = len(keys)
    return table


def format_width(w: WidthValue) -> str:
    """Wire form: integers bare, rationals as p/q in lowest terms."""
    if isinstance(w, bool):
        raise TypeError("booleans are not width values")
    if isinstance(w, int):
        return str(w)
    if isinstance(w, Fraction):
        if w.denominator == 1:
            return str(w.numerator)
        return f"{w.numerator}/{w.denominator}"
    raise TypeError(f"cannot format width {w!r}")


def parse_width(text: str) -> WidthValue:
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return int(text)
