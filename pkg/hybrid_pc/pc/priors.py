"""Building prior knowledge from prior graphs."""

import logging
import math
from itertools import combinations

import numpy as np

from hybrid_pc.graph.models import CausalGraph

from .exceptions import PcError
from .models import PriorKnowledge

logger = logging.getLogger(__name__)

NEGATIVE_STREAM = 11
PERTURB_STREAM = 12


def _check_fraction(fraction: float) -> None:
    if not 0.0 <= fraction <= 1.0:
        raise PcError(f"fraction must be in [0, 1], got {fraction}")


def negative_prior_from(
    prior_graph: CausalGraph,
    fraction: float = 1.0,
    seed: int = 0,
) -> PriorKnowledge:
    """
    Required edges from a prior graph plus forbidden edges among its non-adjacent pairs.

    A ``fraction`` of the pairs not adjacent in the prior graph is sampled
    and forbidden in both directions; 1.0 forbids every non-prior pair.

    Args:
        prior_graph: Prior graph (directed part is used)
        fraction: Share of non-adjacent pairs to forbid
        seed: Sampling seed

    Returns:
        PriorKnowledge
    """
    _check_fraction(fraction)
    names = prior_graph.node_names
    candidates = [
        (a, b) for a, b in combinations(range(prior_graph.n_nodes), 2)
        if not prior_graph.adjacent(a, b)
    ]
    k = math.floor(fraction * len(candidates) + 0.5)
    rng = np.random.default_rng(np.random.SeedSequence([seed, NEGATIVE_STREAM]))
    chosen = sorted(rng.choice(len(candidates), size=k, replace=False)) if k else []
    forbidden = set()
    for i in chosen:
        a, b = candidates[i]
        forbidden.add((names[a], names[b]))
        forbidden.add((names[b], names[a]))
    logger.info(f"Forbidding {k} of {len(candidates)} non-prior pair(s)")
    return PriorKnowledge(
        required=frozenset(prior_graph.edge_names()),
        forbidden=frozenset(forbidden),
    )


def perturb_prior(truth: CausalGraph, rewire_fraction: float, seed: int = 0) -> CausalGraph:
    """
    Simulate an imperfect prior by rewiring edges of a truth graph.

    ceil(rewire_fraction * |E|) edges are dropped and the same number of
    edges is added between pairs non-adjacent in the truth, each in a random
    direction.

    Args:
        truth: Directed truth graph
        rewire_fraction: Share of edges to rewire
        seed: Sampling seed

    Returns:
        Directed graph on the same nodes
    """
    _check_fraction(rewire_fraction)
    edges = sorted(truth.directed_edges)
    non_edges = [
        (a, b) for a, b in combinations(range(truth.n_nodes), 2) if not truth.adjacent(a, b)
    ]
    k = min(math.ceil(round(rewire_fraction * len(edges), 9)), len(edges), len(non_edges))
    rng = np.random.default_rng(np.random.SeedSequence([seed, PERTURB_STREAM]))
    drop = {edges[i] for i in rng.choice(len(edges), size=k, replace=False)} if k else set()
    added = set()
    for i in (rng.choice(len(non_edges), size=k, replace=False) if k else []):
        a, b = non_edges[i]
        added.add((a, b) if rng.random() < 0.5 else (b, a))
    logger.info(f"Rewired {k} of {len(edges)} edge(s)")
    return truth.with_edges(directed=(set(edges) - drop) | added)


def complete_prior(prior_graph: CausalGraph) -> PriorKnowledge:
    """
    Treat a prior graph as the whole truth: its edges required, every other pair forbidden.

    With a correct prior graph, PC under this knowledge returns that graph
    exactly, whatever the data. Equivalent to
    ``negative_prior_from(prior_graph, 1.0)``.
    """
    return negative_prior_from(prior_graph, 1.0)
