"""PC algorithm with required and forbidden edge constraints."""

from .discover import discover, run_pc
from .exceptions import PcError, PriorKnowledgeError
from .models import (
    OrientationConflict,
    OrientationReport,
    PcConfig,
    PcResult,
    PriorKnowledge,
    SepSetMap,
)
from .orientation import apply_meek_rules, orient_v_structures
from .priors import complete_prior, negative_prior_from, perturb_prior
from .skeleton import pc_skeleton

__all__ = [
    "OrientationConflict",
    "OrientationReport",
    "PcConfig",
    "PcError",
    "PcResult",
    "PriorKnowledge",
    "PriorKnowledgeError",
    "SepSetMap",
    "apply_meek_rules",
    "complete_prior",
    "discover",
    "negative_prior_from",
    "orient_v_structures",
    "pc_skeleton",
    "perturb_prior",
    "run_pc",
]
