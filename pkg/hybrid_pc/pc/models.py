"""Data models for the prior-constrained PC algorithm."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any

from hybrid_pc.graph.models import CausalGraph, GraphFile

from .exceptions import PcError, PriorKnowledgeError

NamePair = tuple[str, str]

FORBID_MODES = ("skeleton", "directional")

# conditioning-set cap applied to sample-based tests when none is given
DEFAULT_SAMPLE_MAX_COND = 3


@dataclass(frozen=True)
class PriorKnowledge:
    """Required (prior graph) and forbidden directed edges, by node name."""

    required: frozenset[NamePair] = frozenset()
    forbidden: frozenset[NamePair] = frozenset()

    def __post_init__(self) -> None:
        required = frozenset((a.strip(), b.strip()) for a, b in self.required)
        forbidden = frozenset((a.strip(), b.strip()) for a, b in self.forbidden)
        loops = sorted(a for a, b in required | forbidden if a == b)
        if loops:
            raise PriorKnowledgeError(f"Self-loop(s) in prior knowledge: {loops}")
        both = sorted(required & forbidden)
        if both:
            raise PriorKnowledgeError(f"Edge(s) both required and forbidden: {both}")
        object.__setattr__(self, "required", required)
        object.__setattr__(self, "forbidden", forbidden)

    @classmethod
    def from_graph(cls, g: CausalGraph) -> "PriorKnowledge":
        """Every directed edge of g becomes a required edge."""
        return cls(required=frozenset(g.edge_names()))

    @classmethod
    def from_graph_file(cls, gf: GraphFile) -> "PriorKnowledge":
        return cls(
            required=frozenset(gf.graph.edge_names()),
            forbidden=frozenset(gf.forbidden_names()),
        )

    @property
    def is_empty(self) -> bool:
        return not self.required and not self.forbidden

    def names(self) -> set[str]:
        return {v for pair in self.required | self.forbidden for v in pair}

    def protected_pairs(self) -> set[frozenset[str]]:
        """Unordered pairs the skeleton search must never remove."""
        return {frozenset(p) for p in self.required}

    def excluded_pairs(self, forbid_mode: str = "skeleton") -> set[frozenset[str]]:
        """
        Unordered pairs removed from the complete graph before skeleton search.

        In ``skeleton`` mode a pair is excluded when forbidden in both
        directions, or forbidden in one direction with no requirement in the
        other. In ``directional`` mode only two-way forbids exclude a pair.
        """
        excluded = set()
        for a, b in self.forbidden:
            if (b, a) in self.forbidden:
                excluded.add(frozenset((a, b)))
            elif forbid_mode == "skeleton" and (b, a) not in self.required:
                excluded.add(frozenset((a, b)))
        return excluded

    def merged(self, other: "PriorKnowledge") -> "PriorKnowledge":
        return PriorKnowledge(self.required | other.required, self.forbidden | other.forbidden)


@dataclass(frozen=True)
class PcConfig:
    """
    PC parameters.

    ``max_cond_size`` of None means 3 for sample-based tests and no cap for
    the d-separation oracle.
    """

    alpha: float = 0.05
    max_cond_size: int | None = None
    ci_test: str = "fisher_z"
    jobs: int = 1
    forbid_mode: str = "skeleton"
    kci_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise PcError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.max_cond_size is not None and self.max_cond_size < 0:
            raise PcError(f"max_cond_size must be >= 0, got {self.max_cond_size}")
        if self.jobs < 1:
            raise PcError(f"jobs must be >= 1, got {self.jobs}")
        if self.forbid_mode not in FORBID_MODES:
            raise PcError(f"forbid_mode must be one of {FORBID_MODES}")

    @property
    def effective_max_cond(self) -> int | None:
        if self.max_cond_size is not None:
            return self.max_cond_size
        return None if self.ci_test == "oracle" else DEFAULT_SAMPLE_MAX_COND

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "max_cond_size": self.max_cond_size,
            "ci_test": self.ci_test,
            "jobs": self.jobs,
            "forbid_mode": self.forbid_mode,
            "kci_seed": self.kci_seed,
        }


class SepSetMap:
    """Separating sets keyed by unordered node pair, recorded when an edge is removed."""

    def __init__(self) -> None:
        self._sets: dict[frozenset[str], frozenset[str]] = {}

    def set(self, x: str, y: str, s: Iterable[str]) -> None:
        s = frozenset(s)
        if x in s or y in s:
            raise PcError(f"Separating set for {x}, {y} contains an endpoint")
        self._sets[frozenset((x, y))] = s

    def get(self, x: str, y: str) -> frozenset[str] | None:
        return self._sets.get(frozenset((x, y)))

    def __contains__(self, pair: object) -> bool:
        if isinstance(pair, tuple) and len(pair) == 2:
            return frozenset(pair) in self._sets
        return False

    def __len__(self) -> int:
        return len(self._sets)

    def __iter__(self) -> Iterator[frozenset[str]]:
        return iter(self._sets)

    def to_dict(self) -> dict[str, list[str]]:
        return {
            " -- ".join(sorted(pair)): sorted(s)
            for pair, s in sorted(self._sets.items(), key=lambda kv: sorted(kv[0]))
        }


@dataclass(frozen=True)
class OrientationConflict:
    """One rejected orientation: ``kept`` won over ``rejected`` during ``phase``."""

    phase: str
    kept: NamePair
    rejected: NamePair


@dataclass
class OrientationReport:
    """Machine-readable record of orientation conflicts."""

    conflicts: list[OrientationConflict] = field(default_factory=list)

    def add(self, phase: str, kept: NamePair, rejected: NamePair) -> None:
        self.conflicts.append(OrientationConflict(phase, kept, rejected))

    def to_dict(self) -> dict[str, Any]:
        return {
            "conflicts": [
                {"phase": c.phase, "kept": list(c.kept), "rejected": list(c.rejected)}
                for c in self.conflicts
            ]
        }


@dataclass(frozen=True)
class PcResult:
    """Output of a PC run with its intermediate artifacts."""

    graph: CausalGraph
    skeleton: CausalGraph
    sepsets: SepSetMap
    report: OrientationReport
