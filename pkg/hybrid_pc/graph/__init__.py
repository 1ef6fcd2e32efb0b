"""Causal graph model, structural queries and the graph file format."""

from .algorithms import (
    cpdag_of,
    d_separated,
    graph_stats,
    is_dag,
    minimal_separator,
    topological_order,
)
from .exceptions import (
    CycleError,
    GraphError,
    GraphFormatError,
    MixedGraphError,
    NodeSetMismatchError,
    UnknownNodeError,
)
from .io import load_graph, load_graph_file, save_graph, save_graph_file
from .models import CausalGraph, GraphFile, GraphStats, Node

__all__ = [
    "CausalGraph",
    "CycleError",
    "GraphError",
    "GraphFile",
    "GraphFormatError",
    "GraphStats",
    "MixedGraphError",
    "Node",
    "NodeSetMismatchError",
    "UnknownNodeError",
    "cpdag_of",
    "d_separated",
    "graph_stats",
    "is_dag",
    "load_graph",
    "load_graph_file",
    "minimal_separator",
    "save_graph",
    "save_graph_file",
    "topological_order",
]
