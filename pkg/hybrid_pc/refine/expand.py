"""Adding missing edges whose endpoints stay dependent given a valid separation set."""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from hybrid_pc.graph.algorithms import minimal_separator, require_dag
from hybrid_pc.graph.models import CausalGraph

from .acyclicity import DirectionResolver
from .models import ExpandConfig
from .prune import Source, build_test

logger = logging.getLogger(__name__)


def expand_edges(
    g: CausalGraph,
    source: Source,
    cfg: ExpandConfig | None = None,
    resolver: DirectionResolver | None = None,
) -> CausalGraph:
    """
    Add edges between non-adjacent pairs that test dependent given their separator.

    Separators are computed on the input graph. Dependent pairs
    (p < alpha) are added in ascending p order; each takes the direction
    that avoids a cycle, the prior direction when both are valid, and the
    low-index-first direction otherwise.

    Args:
        g: DAG
        source: Dataset (or truth graph for the oracle test)
        cfg: Expansion parameters
        resolver: Direction resolver carrying prior knowledge

    Returns:
        DAG containing every input edge plus the additions
    """
    require_dag(g)
    cfg = cfg or ExpandConfig()
    resolver = resolver or DirectionResolver()
    test = build_test(source, cfg.ci_test, cfg.kci_seed, g)
    names = g.node_names
    pairs = [(a, b) for a, b in combinations(range(g.n_nodes), 2) if not g.adjacent(a, b)]

    def score(pair: tuple[int, int]) -> tuple[float, tuple[int, int]]:
        x, y = names[pair[0]], names[pair[1]]
        separator = minimal_separator(g, x, y) or frozenset()
        return test.test(x, y, sorted(separator)).p_value, pair

    if cfg.jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            scored = list(pool.map(score, pairs))
    else:
        scored = [score(p) for p in pairs]

    candidates = sorted((p, pair) for p, pair in scored if p < cfg.alpha)
    dg = g.to_networkx()
    for p_value, (a, b) in candidates:
        src, dst = resolver.orient(g, dg, a, b, acyclic_first=True)
        dg.add_edge(src, dst)
        logger.info(f"Added {names[src]} -> {names[dst]} (p={p_value:.4g})")
    return g.with_edges(directed=set(dg.edges()))
