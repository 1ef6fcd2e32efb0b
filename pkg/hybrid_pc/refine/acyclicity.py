"""Direction resolution and greedy cycle breaking."""

import logging
from collections import Counter
from itertools import islice

import networkx as nx

from hybrid_pc.graph.algorithms import creates_cycle
from hybrid_pc.graph.models import CausalGraph
from hybrid_pc.pc.models import PriorKnowledge

logger = logging.getLogger(__name__)

# cycles enumerated per breaking round; keeps dense graphs tractable
MAX_CYCLES = 10_000


class DirectionResolver:
    """
    Choose an orientation for an unoriented pair.

    Prior directions come from a prior graph or prior file; live LLM calls
    are never made here.
    """

    def __init__(self, prior: PriorKnowledge | None = None):
        self.prior = prior or PriorKnowledge()

    def prior_direction(self, g: CausalGraph, a: int, b: int) -> tuple[int, int] | None:
        na, nb = g.nodes[a].name, g.nodes[b].name
        forward = (na, nb) in self.prior.required or (nb, na) in self.prior.forbidden
        backward = (nb, na) in self.prior.required or (na, nb) in self.prior.forbidden
        if forward and not backward:
            return a, b
        if backward and not forward:
            return b, a
        return None

    def orient(
        self,
        g: CausalGraph,
        dg: nx.DiGraph,
        a: int,
        b: int,
        acyclic_first: bool = False,
    ) -> tuple[int, int]:
        """
        Pick src -> dst for the pair (a, b) given the current directed graph dg.

        Default priority: prior direction, then the direction that avoids a
        cycle, then lexicographic (low index first). With ``acyclic_first``
        cycle avoidance outranks the prior.
        """
        lo, hi = min(a, b), max(a, b)
        fwd_ok = not creates_cycle(dg, lo, hi)
        bwd_ok = not creates_cycle(dg, hi, lo)
        prior = self.prior_direction(g, lo, hi)

        if acyclic_first and fwd_ok != bwd_ok:
            return (lo, hi) if fwd_ok else (hi, lo)
        if prior is not None:
            return prior
        if fwd_ok != bwd_ok:
            return (lo, hi) if fwd_ok else (hi, lo)
        return lo, hi


def break_cycles(g: CausalGraph, dg: nx.DiGraph) -> list[tuple[int, int]]:
    """
    Remove edges from dg in place until it is acyclic.

    Each round removes the edge lying on the most enumerated cycles; ties
    remove the lexicographically greatest (src, dst), so of A -> B and
    B -> A the edge B -> A goes.

    Returns:
        Removed edges in removal order
    """
    removed: list[tuple[int, int]] = []
    while not nx.is_directed_acyclic_graph(dg):
        counts: Counter[tuple[int, int]] = Counter()
        for cycle in islice(nx.simple_cycles(dg), MAX_CYCLES):
            for i, src in enumerate(cycle):
                counts[(src, cycle[(i + 1) % len(cycle)])] += 1
        edge = max(counts, key=lambda e: (counts[e], e))
        dg.remove_edge(*edge)
        removed.append(edge)
        logger.info(
            f"Removed {g.nodes[edge[0]].name} -> {g.nodes[edge[1]].name} "
            f"(on {counts[edge]} cycle(s))"
        )
    return removed


def enforce_acyclicity(g: CausalGraph, resolver: DirectionResolver | None = None) -> CausalGraph:
    """
    Turn a mixed graph into a DAG.

    Undirected edges are oriented one at a time in index order by the
    resolver (prior direction, then cycle avoidance, then low index first).
    Remaining directed cycles are broken greedily. No adjacency is ever
    added and surviving edges keep their input orientation.

    Args:
        g: Mixed graph, possibly cyclic
        resolver: Direction resolver (no prior when omitted)

    Returns:
        DAG on the same nodes
    """
    resolver = resolver or DirectionResolver()
    dg = g.to_networkx()
    for a, b in sorted(g.undirected_edges):
        dg.add_edge(*resolver.orient(g, dg, a, b))
    removed = break_cycles(g, dg)
    if removed:
        logger.info(f"Cycle breaking removed {len(removed)} edge(s)")
    return g.with_edges(directed=set(dg.edges()))
