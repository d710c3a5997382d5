"""Exception types shared across the solver."""

from __future__ import annotations


class FwidthError(Exception):
    """Base class for all solver errors."""


class CapacityExceeded(FwidthError):
    """A configured size or memory budget was exceeded."""


class ParseError(FwidthError):
    """Malformed input text."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class IsolatedVertexError(FwidthError):
    """A declared vertex occurs in no hyperedge."""

    def __init__(self, name: str):
        super().__init__(f"isolated vertex {name!r} (use --patch-isolated to accept)")
        self.name = name


class DecompositionError(FwidthError):
    """A tree-decomposition condition failed; subclasses carry the witness."""


class NotATree(DecompositionError):
    pass


class VertexUncovered(DecompositionError):
    def __init__(self, vertex: int, name: str):
        super().__init__(f"vertex {name!r} appears in no bag")
        self.vertex = vertex


class EdgeUncovered(DecompositionError):
    def __init__(self, edge_index: int, members: tuple[str, ...]):
        super().__init__(f"hyperedge #{edge_index + 1} {{{', '.join(members)}}} fits in no bag")
        self.edge_index = edge_index


class SubtreeDisconnected(DecompositionError):
    def __init__(self, vertex: int, name: str):
        super().__init__(f"bags containing vertex {name!r} do not form a subtree")
        self.vertex = vertex


class EmptyTrace(FwidthError):
    """A query vertex lies in no hyperedge (unreachable for validated inputs)."""


class ArithmeticOverflow(FwidthError):
    """Exact rational magnitudes exceeded the configured bit budget."""


class InternalInfeasible(FwidthError):
    """The block DP left a full block unresolved; indicates an enumeration bug."""


class AttachmentNotFound(InternalInfeasible):
    """No parent bag contains a child's separator during reconstruction."""
