"""Level-wise skeleton search with protected and excluded pairs."""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Any

from hybrid_pc.ci_tests import BaseCITest, get_ci_test
from hybrid_pc.dataset import Dataset
from hybrid_pc.graph.exceptions import UnknownNodeError
from hybrid_pc.graph.models import CausalGraph, Node

from .exceptions import PcError
from .models import PcConfig, PriorKnowledge, SepSetMap

logger = logging.getLogger(__name__)

Source = Dataset | CausalGraph


def source_nodes(source: Source) -> tuple[Node, ...]:
    """Graph nodes for a data source: dataset columns or the oracle graph's nodes."""
    if isinstance(source, Dataset):
        return tuple(Node(c) for c in source.columns)
    return source.nodes


def make_ci_test(source: Source, cfg: PcConfig) -> BaseCITest:
    if cfg.ci_test == "oracle" and not isinstance(source, CausalGraph):
        raise PcError("The oracle CI test needs a truth graph as its source")
    if cfg.ci_test != "oracle" and not isinstance(source, Dataset):
        raise PcError(f"The {cfg.ci_test} CI test needs a dataset as its source")
    options: dict[str, Any] = {"seed": cfg.kci_seed} if cfg.ci_test == "kci" else {}
    return get_ci_test(cfg.ci_test, source, **options)


def _search_pair(
    test: BaseCITest,
    names: tuple[str, ...],
    a: int,
    b: int,
    level: int,
    frozen: dict[int, list[int]],
    alpha: float,
) -> tuple[tuple[int, ...] | None, int]:
    """Look for a separating set of size ``level`` among adj(a) then adj(b)."""
    n_tests = 0
    for x, y in ((a, b), (b, a)):
        candidates = [v for v in frozen[x] if v != y]
        if len(candidates) < level:
            continue
        for s in combinations(candidates, level):
            n_tests += 1
            result = test.test(names[x], names[y], [names[v] for v in s])
            if result.p_value > alpha:
                return tuple(s), n_tests
    return None, n_tests


def pc_skeleton(
    source: Source,
    cfg: PcConfig,
    prior: PriorKnowledge | None = None,
    test: BaseCITest | None = None,
) -> tuple[CausalGraph, SepSetMap]:
    """
    Discover the undirected skeleton by level-wise CI testing.

    Starts from the complete graph minus excluded prior pairs. At level l
    every unprotected remaining pair (x, y) is tested against subsets of
    size l of adj(x) \\ {y}, then adj(y) \\ {x}, in lexicographic order.
    Decisions within a level use the adjacency frozen at level start and
    removals are applied once the level completes, so the result does not
    depend on ``cfg.jobs``.

    Args:
        source: Dataset, or the truth graph for the oracle test
        cfg: PC parameters
        prior: Required and forbidden edges
        test: Pre-built CI test (built from source and cfg when omitted)

    Returns:
        (undirected skeleton, separating sets)

    Raises:
        UnknownNodeError: If prior edges name variables missing from source
        CITestError: If a test fails; the error names the failing query
    """
    prior = prior or PriorKnowledge()
    nodes = source_nodes(source)
    names = tuple(n.name for n in nodes)
    unknown = sorted(prior.names() - set(names))
    if unknown:
        raise UnknownNodeError(unknown)
    test = test or make_ci_test(source, cfg)

    n = len(names)
    excluded = prior.excluded_pairs(cfg.forbid_mode)
    protected = prior.protected_pairs()
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b in combinations(range(n), 2):
        if frozenset((names[a], names[b])) not in excluded:
            adj[a].add(b)
            adj[b].add(a)
    if excluded:
        logger.info(f"Excluded {len(excluded)} forbidden pair(s) before skeleton search")

    sepsets = SepSetMap()
    max_level = cfg.effective_max_cond
    total_tests = 0
    level = 0
    while max_level is None or level <= max_level:
        frozen = {i: sorted(adj[i]) for i in range(n)}
        pairs = [
            (a, b)
            for a in range(n)
            for b in frozen[a]
            if a < b and frozenset((names[a], names[b])) not in protected
        ]
        if not any(
            len(frozen[a]) - 1 >= level or len(frozen[b]) - 1 >= level for a, b in pairs
        ):
            break

        def decide(pair: tuple[int, int]) -> tuple[tuple[int, ...] | None, int]:
            return _search_pair(test, names, pair[0], pair[1], level, frozen, cfg.alpha)

        if cfg.jobs > 1 and len(pairs) > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                decisions = list(pool.map(decide, pairs))
        else:
            decisions = [decide(p) for p in pairs]

        removed = 0
        for (a, b), (sepset, n_tests) in zip(pairs, decisions):
            total_tests += n_tests
            if sepset is None:
                continue
            adj[a].discard(b)
            adj[b].discard(a)
            sepsets.set(names[a], names[b], [names[v] for v in sepset])
            removed += 1
        logger.info(f"Skeleton level {level}: {len(pairs)} pair(s) tested, {removed} removed")
        level += 1

    skeleton = CausalGraph(
        nodes=nodes,
        undirected_edges=frozenset((a, b) for a in range(n) for b in adj[a] if a < b),
    )
    logger.info(
        f"Skeleton search done: {len(skeleton.undirected_edges)} edge(s) kept, "
        f"{total_tests} CI test(s) run"
    )
    return skeleton, sepsets
