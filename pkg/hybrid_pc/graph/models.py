"""Data models for causal graphs."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import networkx as nx

from .exceptions import GraphError, UnknownNodeError

Edge = tuple[int, int]


def normalize_name(name: str) -> str:
    """Trim surrounding whitespace; case is preserved."""
    return name.strip()


@dataclass(frozen=True)
class Node:
    """A named variable with an optional free-text description."""

    name: str
    description: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", normalize_name(self.name))
        if not self.name:
            raise GraphError("Node names must be non-empty")


@dataclass(frozen=True)
class CausalGraph:
    """
    Mixed graph over an ordered node list.

    Directed edges are ordered index pairs. Undirected edges are stored as
    (low, high) index pairs. A pair is either directed (in one or both
    directions) or undirected, never both. Instances are immutable; every
    modifying helper returns a new graph.
    """

    nodes: tuple[Node, ...]
    directed_edges: frozenset[Edge] = frozenset()
    undirected_edges: frozenset[Edge] = frozenset()
    name: str = ""
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nodes = tuple(n if isinstance(n, Node) else Node(str(n)) for n in self.nodes)
        object.__setattr__(self, "nodes", nodes)

        index: dict[str, int] = {}
        for i, node in enumerate(nodes):
            if node.name in index:
                raise GraphError(f"Duplicate node name: {node.name}")
            index[node.name] = i
        object.__setattr__(self, "_index", index)

        n = len(nodes)
        directed = frozenset((int(a), int(b)) for a, b in self.directed_edges)
        undirected = frozenset(
            (min(int(a), int(b)), max(int(a), int(b))) for a, b in self.undirected_edges
        )
        for a, b in directed | undirected:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"Edge ({a}, {b}) references a node outside 0..{n - 1}")
            if a == b:
                raise GraphError(f"Self-loop on node {nodes[a].name}")
        for a, b in undirected:
            if (a, b) in directed or (b, a) in directed:
                raise GraphError(
                    f"Pair {nodes[a].name}, {nodes[b].name} is both directed and undirected"
                )
        object.__setattr__(self, "directed_edges", directed)
        object.__setattr__(self, "undirected_edges", undirected)

    @classmethod
    def from_edges(
        cls,
        names: Iterable[str | Node],
        edges: Iterable[tuple[str, str]] = (),
        undirected: Iterable[tuple[str, str]] = (),
        name: str = "",
    ) -> "CausalGraph":
        """
        Build a graph from node names and name-pair edges.

        Args:
            names: Node names (or Node objects) in graph order
            edges: Directed (src, dst) name pairs
            undirected: Unordered name pairs
            name: Optional graph name

        Returns:
            CausalGraph

        Raises:
            UnknownNodeError: If an edge endpoint is not a listed node
        """
        nodes = tuple(n if isinstance(n, Node) else Node(n) for n in names)
        graph = cls(nodes=nodes, name=name)
        return graph.with_edges(
            directed=[graph.edge_index(a, b) for a, b in edges],
            undirected=[graph.edge_index(a, b) for a, b in undirected],
        )

    @property
    def node_names(self) -> tuple[str, ...]:
        return tuple(n.name for n in self.nodes)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def is_mixed(self) -> bool:
        return bool(self.undirected_edges)

    def index(self, name: str) -> int:
        """Return the index of a node by (normalized) name."""
        try:
            return self._index[normalize_name(name)]
        except KeyError:
            raise UnknownNodeError([name]) from None

    def indices(self, names: Iterable[str]) -> list[int]:
        """Resolve many names at once, reporting every unknown name together."""
        names = list(names)
        unknown = [n for n in names if normalize_name(n) not in self._index]
        if unknown:
            raise UnknownNodeError(unknown)
        return [self._index[normalize_name(n)] for n in names]

    def edge_index(self, src: str, dst: str) -> Edge:
        a, b = self.indices([src, dst])
        return a, b

    def has_node(self, name: str) -> bool:
        return normalize_name(name) in self._index

    def has_directed(self, a: int, b: int) -> bool:
        return (a, b) in self.directed_edges

    def has_undirected(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.undirected_edges

    def adjacent(self, a: int, b: int) -> bool:
        return self.has_directed(a, b) or self.has_directed(b, a) or self.has_undirected(a, b)

    def parents(self, i: int) -> list[int]:
        return sorted(a for a, b in self.directed_edges if b == i)

    def children(self, i: int) -> list[int]:
        return sorted(b for a, b in self.directed_edges if a == i)

    def neighbors(self, i: int) -> list[int]:
        """Nodes joined to i by an undirected edge."""
        return sorted({b for a, b in self.undirected_edges if a == i} | {
            a for a, b in self.undirected_edges if b == i
        })

    def adjacencies(self, i: int) -> list[int]:
        return sorted(set(self.parents(i)) | set(self.children(i)) | set(self.neighbors(i)))

    def skeleton(self) -> frozenset[Edge]:
        """Unordered (low, high) pairs of all adjacencies."""
        pairs = {(min(a, b), max(a, b)) for a, b in self.directed_edges}
        return frozenset(pairs | self.undirected_edges)

    def edge_names(self) -> list[tuple[str, str]]:
        """Directed edges as name pairs in index order."""
        return [(self.nodes[a].name, self.nodes[b].name) for a, b in sorted(self.directed_edges)]

    def undirected_names(self) -> list[tuple[str, str]]:
        return [
            (self.nodes[a].name, self.nodes[b].name) for a, b in sorted(self.undirected_edges)
        ]

    def with_edges(
        self,
        directed: Iterable[Edge] = (),
        undirected: Iterable[Edge] = (),
    ) -> "CausalGraph":
        """Return a graph on the same nodes with the given edge sets."""
        return CausalGraph(
            nodes=self.nodes,
            directed_edges=frozenset(directed),
            undirected_edges=frozenset(undirected),
            name=self.name,
        )

    def relabeled(self, mapping: Mapping[str, str]) -> "CausalGraph":
        """Rename nodes; names absent from mapping are kept."""
        nodes = tuple(Node(mapping.get(n.name, n.name), n.description) for n in self.nodes)
        return CausalGraph(nodes, self.directed_edges, self.undirected_edges, self.name)

    def to_networkx(self) -> nx.DiGraph:
        """Directed part of the graph as a networkx DiGraph keyed by node index."""
        dg = nx.DiGraph()
        dg.add_nodes_from(range(self.n_nodes))
        dg.add_edges_from(self.directed_edges)
        return dg


@dataclass(frozen=True)
class GraphStats:
    """Summary statistics of a graph."""

    n_nodes: int
    n_edges: int
    n_colliders: int
    in_degree_min: int
    in_degree_median: int
    in_degree_max: int
    longest_directed_path: int | None


@dataclass(frozen=True)
class GraphFile:
    """Contents of a graph file: the graph plus optional forbidden directed edges."""

    graph: CausalGraph
    forbidden_edges: frozenset[Edge] = frozenset()

    def forbidden_names(self) -> list[tuple[str, str]]:
        nodes = self.graph.nodes
        return [(nodes[a].name, nodes[b].name) for a, b in sorted(self.forbidden_edges)]
