"""Structural queries on causal graphs."""

import logging
from collections.abc import Iterable

import networkx as nx

from .exceptions import CycleError, GraphError, MixedGraphError
from .models import CausalGraph, GraphStats
from .orientation import meek_closure, v_structures

logger = logging.getLogger(__name__)


def _require_directed(g: CausalGraph) -> nx.DiGraph:
    if g.is_mixed:
        raise MixedGraphError(
            f"Graph '{g.name}' has {len(g.undirected_edges)} undirected edge(s); "
            "a fully directed graph is required"
        )
    return g.to_networkx()


def require_dag(g: CausalGraph) -> nx.DiGraph:
    dg = _require_directed(g)
    if not nx.is_directed_acyclic_graph(dg):
        cycle = nx.find_cycle(dg)
        raise CycleError(g.nodes[a].name for a, _ in cycle)
    return dg


def is_dag(g: CausalGraph) -> bool:
    """
    Check whether the directed edges of g admit a topological order.

    Raises:
        MixedGraphError: If g has undirected edges
    """
    return bool(nx.is_directed_acyclic_graph(_require_directed(g)))


def topological_order(g: CausalGraph) -> list[str]:
    """
    Topological order of node names, ties broken by ascending node index.

    Raises:
        MixedGraphError: If g has undirected edges
        CycleError: If g has a directed cycle
    """
    dg = require_dag(g)
    return [g.nodes[i].name for i in nx.lexicographical_topological_sort(dg)]


def topological_indices(g: CausalGraph) -> list[int]:
    dg = require_dag(g)
    return list(nx.lexicographical_topological_sort(dg))


def _check_query(g: CausalGraph, x: str, y: str, s: Iterable[str]) -> tuple[int, int, set[int]]:
    xi, yi = g.indices([x, y])
    si = set(g.indices(s))
    if xi == yi:
        raise GraphError(f"d-separation query needs two distinct nodes, got {x} twice")
    if xi in si or yi in si:
        raise GraphError(f"Conditioning set must not contain {x} or {y}")
    return xi, yi, si


def d_separated(g: CausalGraph, x: str, y: str, s: Iterable[str] = ()) -> bool:
    """
    Test whether s d-separates x and y in the DAG g.

    Args:
        g: DAG
        x: First node name
        y: Second node name
        s: Conditioning node names

    Returns:
        True if every path between x and y is blocked by s

    Raises:
        UnknownNodeError: If any name is not in g
        CycleError: If g is not acyclic
    """
    dg = require_dag(g)
    xi, yi, si = _check_query(g, x, y, s)
    return bool(nx.is_d_separator(dg, {xi}, {yi}, si))


def minimal_separator(g: CausalGraph, x: str, y: str) -> frozenset[str] | None:
    """
    Inclusion-minimal d-separating set for x and y.

    The search runs on the moralized ancestral graph of {x, y}, so the
    result only holds ancestors of x or y and never a collider that is
    blocked only through its own absence.

    Returns:
        The separating node names, or None when x and y are adjacent or
        cannot be separated
    """
    dg = require_dag(g)
    xi, yi, _ = _check_query(g, x, y, ())
    if g.adjacent(xi, yi):
        return None
    found = nx.find_minimal_d_separator(dg, {xi}, {yi})
    if found is None:
        return None
    return frozenset(g.nodes[i].name for i in found)


def graph_stats(g: CausalGraph, unshielded_only: bool = False) -> GraphStats:
    """
    Compute node, edge, collider, in-degree and path statistics.

    Undirected edges count towards n_edges but are ignored by every
    directed statistic. The longest directed path is only reported for
    fully directed acyclic graphs.

    Args:
        g: Graph
        unshielded_only: Count only colliders with non-adjacent parents

    Returns:
        GraphStats
    """
    in_degrees = sorted(len(g.parents(i)) for i in range(g.n_nodes))
    if in_degrees:
        # lower median for even counts
        median = in_degrees[(len(in_degrees) - 1) // 2]
        lo, hi = in_degrees[0], in_degrees[-1]
    else:
        median = lo = hi = 0

    longest: int | None = None
    if not g.is_mixed:
        dg = g.to_networkx()
        if nx.is_directed_acyclic_graph(dg):
            longest = int(nx.dag_longest_path_length(dg)) if g.n_nodes else 0

    return GraphStats(
        n_nodes=g.n_nodes,
        n_edges=len(g.directed_edges) + len(g.undirected_edges),
        n_colliders=len(v_structures(g, unshielded_only=unshielded_only)),
        in_degree_min=int(lo),
        in_degree_median=int(median),
        in_degree_max=int(hi),
        longest_directed_path=longest,
    )


def cpdag_of(g: CausalGraph) -> CausalGraph:
    """
    Markov-equivalence-class representative of a DAG.

    Edges taking part in an unshielded collider are directed, every other
    edge starts undirected, and Meek rules orient what is compelled.

    Raises:
        MixedGraphError: If g has undirected edges
        CycleError: If g is not acyclic
    """
    require_dag(g)
    compelled = set()
    for a, b, c in v_structures(g, unshielded_only=True):
        compelled.add((a, b))
        compelled.add((c, b))
    rest = {(min(a, b), max(a, b)) for a, b in g.directed_edges if (a, b) not in compelled}
    return meek_closure(g.with_edges(directed=compelled, undirected=rest))


def creates_cycle(dg: nx.DiGraph, src: int, dst: int) -> bool:
    """True if adding src -> dst to dg closes a directed cycle."""
    return src == dst or bool(nx.has_path(dg, dst, src))
