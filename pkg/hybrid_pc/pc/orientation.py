"""Orientation phases of PC: colliders, prior-first orientation, Meek closure."""

import logging

from hybrid_pc.graph.models import CausalGraph
from hybrid_pc.graph.orientation import meek_closure

from .models import OrientationReport, PriorKnowledge, SepSetMap

logger = logging.getLogger(__name__)


def orient_v_structures(
    skel: CausalGraph,
    sepsets: SepSetMap,
    report: OrientationReport | None = None,
) -> CausalGraph:
    """
    Orient x -> z <- y for every unshielded triple x - z - y with z outside sepset(x, y).

    Triples are visited in lexicographic (x, z, y) index order with x < y.
    An edge keeps the first orientation it receives; later contradicting
    orientations are dropped and recorded in ``report``. Triples whose outer
    pair has no recorded separating set (pairs excluded by prior knowledge)
    are skipped.

    Args:
        skel: Undirected skeleton
        sepsets: Separating sets from the skeleton search
        report: Optional conflict report to append to

    Returns:
        Mixed graph
    """
    names = skel.node_names
    n = skel.n_nodes
    orientation: dict[tuple[int, int], tuple[int, int]] = {}

    def claim(src: int, dst: int) -> None:
        key = (min(src, dst), max(src, dst))
        existing = orientation.get(key)
        if existing is None:
            orientation[key] = (src, dst)
        elif existing != (src, dst):
            kept = (names[existing[0]], names[existing[1]])
            rejected = (names[src], names[dst])
            logger.debug(f"Collider conflict: keeping {kept}, dropping {rejected}")
            if report is not None:
                report.add("v_structure", kept, rejected)

    for x in range(n):
        for z in skel.neighbors(x):
            for y in skel.neighbors(z):
                if y <= x or skel.adjacent(x, y):
                    continue
                sepset = sepsets.get(names[x], names[y])
                if sepset is None:
                    continue
                if names[z] in sepset:
                    continue
                claim(x, z)
                claim(y, z)

    directed = set(orientation.values())
    undirected = {e for e in skel.undirected_edges if e not in orientation}
    logger.info(f"Oriented {len(directed)} edge(s) from unshielded colliders")
    return skel.with_edges(directed=directed, undirected=undirected)


def _orient_prior(
    g: CausalGraph,
    prior: PriorKnowledge,
    report: OrientationReport | None,
) -> CausalGraph:
    directed = set(g.directed_edges)
    undirected = set(g.undirected_edges)
    names = g.node_names

    def force(src: int, dst: int, phase: str) -> None:
        key = (min(src, dst), max(src, dst))
        if key in undirected:
            undirected.discard(key)
            directed.add((src, dst))
        elif (dst, src) in directed and (src, dst) not in directed:
            directed.discard((dst, src))
            directed.add((src, dst))
            kept, rejected = (names[src], names[dst]), (names[dst], names[src])
            logger.warning(f"Prior overrides data orientation: {kept} replaces {rejected}")
            if report is not None:
                report.add(phase, kept, rejected)

    for a, b in sorted(prior.required):
        if g.has_node(a) and g.has_node(b):
            force(g.index(a), g.index(b), "prior")

    # a one-way forbid orients the surviving pair the other way
    for a, b in sorted(prior.forbidden):
        if (b, a) in prior.forbidden or not (g.has_node(a) and g.has_node(b)):
            continue
        force(g.index(b), g.index(a), "forbidden")

    return g.with_edges(directed=directed, undirected=undirected)


def apply_meek_rules(
    g: CausalGraph,
    prior: PriorKnowledge | None = None,
    report: OrientationReport | None = None,
) -> CausalGraph:
    """
    Orient prior edges first, then close under Meek rules R1-R4.

    Required edges take their prior direction, overriding any collider
    orientation (recorded as a conflict). A pair forbidden in one direction
    only is oriented the other way. Meek rules then orient what the partial
    orientation compels; everything else stays undirected.

    Args:
        g: Mixed graph
        prior: Required and forbidden edges
        report: Optional conflict report to append to

    Returns:
        Mixed graph
    """
    if prior is not None and not prior.is_empty:
        g = _orient_prior(g, prior, report)
    return meek_closure(g)
