"""Witness-set p-value edge pruning."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from hybrid_pc.ci_tests import BaseCITest, get_ci_test
from hybrid_pc.dataset import Dataset
from hybrid_pc.graph.algorithms import minimal_separator, require_dag
from hybrid_pc.graph.exceptions import UnknownNodeError
from hybrid_pc.graph.models import CausalGraph

from .exceptions import RefineError
from .models import EdgeScore, PruneConfig

logger = logging.getLogger(__name__)

Source = Dataset | CausalGraph


def build_test(source: Source, ci_test: str, kci_seed: int, g: CausalGraph) -> BaseCITest:
    """CI test on ``source`` after checking it covers every node of g."""
    if ci_test == "oracle":
        if not isinstance(source, CausalGraph):
            raise RefineError("The oracle CI test needs a truth graph as its source")
        available = set(source.node_names)
    else:
        if not isinstance(source, Dataset):
            raise RefineError(f"The {ci_test} CI test needs a dataset as its source")
        available = set(source.columns)
    missing = sorted(set(g.node_names) - available)
    if missing:
        raise UnknownNodeError(missing)
    options: dict[str, Any] = {"seed": kci_seed} if ci_test == "kci" else {}
    return get_ci_test(ci_test, source, **options)


def score_edges(g: CausalGraph, test: BaseCITest, jobs: int = 1) -> list[EdgeScore]:
    """Score every edge of g by testing it against its witness set, in index order."""
    edges = sorted(g.directed_edges)

    def score(edge: tuple[int, int]) -> EdgeScore:
        x, y = g.nodes[edge[0]].name, g.nodes[edge[1]].name
        without = g.with_edges(directed=g.directed_edges - {edge})
        witness = minimal_separator(without, x, y) or frozenset()
        result = test.test(x, y, sorted(witness))
        logger.debug(f"{x} -> {y}: witness {sorted(witness)}, p={result.p_value:.4g}")
        return EdgeScore(edge=(x, y), witness=witness, p_value=result.p_value)

    if jobs > 1 and len(edges) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(score, edges))
    return [score(e) for e in edges]


def prune_edges(
    g: CausalGraph,
    source: Source,
    cfg: PruneConfig,
) -> tuple[CausalGraph, list[EdgeScore]]:
    """
    Remove ceil(alpha * |E|) edges ranked by witness-set p-value.

    Each edge is removed temporarily, its witness is the minimal
    d-separator of its endpoints in the remaining graph (empty when none
    exists), and the CI test is run conditioned on that witness. Scores are
    stable-sorted by p-value in ``cfg.order`` with ties in edge index order;
    the first ceil(alpha * |E|) are removed.

    Args:
        g: DAG
        source: Dataset (or truth graph for the oracle test)
        cfg: Pruning parameters

    Returns:
        (pruned DAG, every edge's score in ranking order)

    Raises:
        CycleError: If g is not acyclic
        CITestError: If a test fails
    """
    require_dag(g)
    test = build_test(source, cfg.ci_test, cfg.kci_seed, g)
    scores = score_edges(g, test, cfg.jobs)
    if cfg.order == "highest_p_first":
        ranked = sorted(scores, key=lambda s: -s.p_value)
    else:
        ranked = sorted(scores, key=lambda s: s.p_value)

    k = cfg.removal_count(len(ranked))
    if k == 0:
        return g, ranked
    drop = {g.edge_index(*s.edge) for s in ranked[:k]}
    logger.info(f"Pruning {k} of {len(ranked)} edge(s) ({cfg.order})")
    return g.with_edges(directed=g.directed_edges - drop), ranked
