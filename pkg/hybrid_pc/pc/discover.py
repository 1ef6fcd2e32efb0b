"""End-to-end PC with prior knowledge."""

import logging

from hybrid_pc.graph.models import CausalGraph

from .models import OrientationReport, PcConfig, PcResult, PriorKnowledge
from .orientation import apply_meek_rules, orient_v_structures
from .skeleton import Source, pc_skeleton

logger = logging.getLogger(__name__)


def run_pc(
    source: Source,
    cfg: PcConfig | None = None,
    prior: PriorKnowledge | None = None,
) -> PcResult:
    """
    Skeleton search, collider orientation, prior-first orientation, Meek closure.

    With an empty prior this is plain PC.

    Args:
        source: Dataset, or the truth graph when ``cfg.ci_test`` is "oracle"
        cfg: PC parameters (defaults when omitted)
        prior: Required and forbidden edges

    Returns:
        PcResult holding the output graph, skeleton, separating sets and the
        orientation conflict report
    """
    cfg = cfg or PcConfig()
    prior = prior or PriorKnowledge()
    logger.info(
        f"Running PC: ci_test={cfg.ci_test}, alpha={cfg.alpha}, "
        f"max_cond={cfg.effective_max_cond}, required={len(prior.required)}, "
        f"forbidden={len(prior.forbidden)}, forbid_mode={cfg.forbid_mode}"
    )
    report = OrientationReport()
    skeleton, sepsets = pc_skeleton(source, cfg, prior)
    oriented = orient_v_structures(skeleton, sepsets, report)
    graph = apply_meek_rules(oriented, prior, report)
    logger.info(
        f"PC finished: {len(graph.directed_edges)} directed, "
        f"{len(graph.undirected_edges)} undirected edge(s), {len(report.conflicts)} conflict(s)"
    )
    return PcResult(graph=graph, skeleton=skeleton, sepsets=sepsets, report=report)


def discover(
    source: Source,
    cfg: PcConfig | None = None,
    prior: PriorKnowledge | None = None,
) -> CausalGraph:
    """Output graph of ``run_pc``."""
    return run_pc(source, cfg, prior).graph
