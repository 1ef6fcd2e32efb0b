"""Post-processing of discovered graphs: acyclicity, pruning and expansion."""

from .acyclicity import DirectionResolver, enforce_acyclicity
from .exceptions import RefineError
from .expand import expand_edges
from .models import EdgeScore, ExpandConfig, PruneConfig
from .prune import prune_edges

__all__ = [
    "DirectionResolver",
    "EdgeScore",
    "ExpandConfig",
    "PruneConfig",
    "RefineError",
    "enforce_acyclicity",
    "expand_edges",
    "prune_edges",
]
