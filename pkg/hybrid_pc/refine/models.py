"""Data models for refinement."""

import math
from dataclasses import dataclass

from .exceptions import RefineError

PRUNE_ORDERS = ("highest_p_first", "lowest_p_first")


@dataclass(frozen=True)
class PruneConfig:
    """
    Witness-set pruning parameters.

    ``highest_p_first`` removes the edges that look most independent given
    their witness set; ``lowest_p_first`` keeps the literal ascending order.
    """

    remove_fraction: float = 0.0
    order: str = "highest_p_first"
    ci_test: str = "fisher_z"
    kci_seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.remove_fraction <= 1.0:
            raise RefineError(f"remove_fraction must be in [0, 1], got {self.remove_fraction}")
        if self.order not in PRUNE_ORDERS:
            raise RefineError(f"order must be one of {PRUNE_ORDERS}, got {self.order}")

    def removal_count(self, n_edges: int) -> int:
        """ceil(remove_fraction * n_edges), immune to float noise such as 0.1 * 10."""
        return min(n_edges, math.ceil(round(self.remove_fraction * n_edges, 9)))


@dataclass(frozen=True)
class ExpandConfig:
    """Edge-expansion parameters: pairs dependent at ``alpha`` are added."""

    alpha: float = 0.05
    ci_test: str = "fisher_z"
    kci_seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise RefineError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class EdgeScore:
    """p-value of an edge tested against its witness set."""

    edge: tuple[str, str]
    witness: frozenset[str]
    p_value: float
