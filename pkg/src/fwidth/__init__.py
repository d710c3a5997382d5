"""Exact widths of hypergraphs: tree-width, generalized and fractional
hypertree-width, and any custom monotone width function, each with a
verified optimal tree decomposition."""

from .core import (
    Graph,
    Hypergraph,
    TreeDecomposition,
    components,
    gaifman,
    validate_decomposition,
)
from .engine import Limits, SolveResult, SolveStats, solve, solve_graph, solve_hypergraph
from .errors import (
    CapacityExceeded,
    DecompositionError,
    EdgeUncovered,
    FwidthError,
    IsolatedVertexError,
    ParseError,
    SubtreeDisconnected,
    VertexUncovered,
)
from .widthfn import (
    INFINITY,
    WidthFunction,
    custom_width_function,
    fractional_cover_function,
    fractional_cover_width,
    integral_cover_function,
    integral_cover_width,
    size_width,
    size_width_function,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Hypergraph",
    "TreeDecomposition",
    "components",
    "gaifman",
    "validate_decomposition",
    "Limits",
    "SolveResult",
    "SolveStats",
    "solve",
    "solve_graph",
    "solve_hypergraph",
    "CapacityExceeded",
    "DecompositionError",
    "EdgeUncovered",
    "FwidthError",
    "IsolatedVertexError",
    "ParseError",
    "SubtreeDisconnected",
    "VertexUncovered",
    "INFINITY",
    "WidthFunction",
    "custom_width_function",
    "fractional_cover_function",
    "fractional_cover_width",
    "integral_cover_function",
    "integral_cover_width",
    "size_width",
    "size_width_function",
    "__version__",
]
