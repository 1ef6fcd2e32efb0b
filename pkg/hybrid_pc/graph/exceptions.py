"""Custom exceptions for graph operations."""

from collections.abc import Iterable

from hybrid_pc.exceptions import HybridPCError


class GraphError(HybridPCError):
    """Base exception for structural graph errors."""


class CycleError(GraphError):
    """Raised when an operation requiring a DAG meets a directed cycle."""

    def __init__(self, cycle: Iterable[str]):
        self.cycle = tuple(cycle)
        path = " -> ".join([*self.cycle, self.cycle[0]]) if self.cycle else ""
        super().__init__(f"Graph contains a directed cycle: {path}")


class MixedGraphError(GraphError):
    """Raised when an operation requiring a fully directed graph gets undirected edges."""

    def __init__(self, message: str = "Operation requires a graph without undirected edges"):
        super().__init__(message)


class UnknownNodeError(GraphError):
    """Raised when a node name does not exist in the graph."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        super().__init__(f"Unknown node(s): {', '.join(self.names)}")


class GraphFormatError(GraphError):
    """Raised when a graph file cannot be parsed or violates the file format."""

    def __init__(self, message: str = "Invalid graph file"):
        super().__init__(message)


class NodeSetMismatchError(GraphError):
    """Raised when two graphs that must share a node set do not."""

    def __init__(self, missing: Iterable[str], extra: Iterable[str]):
        self.missing = tuple(sorted(missing))
        self.extra = tuple(sorted(extra))
        super().__init__(
            f"Node sets differ: missing from prediction {list(self.missing)}, "
            f"not in truth {list(self.extra)}"
        )
