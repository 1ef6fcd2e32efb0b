"""Edge-level precision/recall/F1 and negative-edge compliance."""

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from hybrid_pc.graph.exceptions import NodeSetMismatchError
from hybrid_pc.graph.models import CausalGraph

from .exceptions import EvalError

MATCHING_MODES = ("directed_strict", "skeleton", "cpdag_aware")
DEFAULT_MODE = "directed_strict"

# ("d", src, dst) for a directed edge, ("u", low, high) for an undirected one
_Item = tuple[str, str, str]


def ratio(num: float, den: float) -> float:
    """num/den with 0/0 -> 0."""
    return num / den if den else 0.0


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall, 0 when both are 0."""
    return ratio(2 * precision * recall, precision + recall)


@dataclass(frozen=True)
class EvalReport:
    """Edge counts and scores of a predicted graph against a truth graph."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    matching_mode: str

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, mode: str) -> "EvalReport":
        precision = ratio(tp, tp + fp)
        recall = ratio(tp, tp + fn)
        return cls(tp, fp, fn, precision, recall, f1_score(precision, recall), mode)

    def to_dict(self) -> dict[str, Any]:
        return {
            "matching_mode": self.matching_mode,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def _items(g: CausalGraph) -> set[_Item]:
    names = g.node_names
    items = {("d", names[a], names[b]) for a, b in g.directed_edges}
    for a, b in g.undirected_edges:
        lo, hi = sorted((names[a], names[b]))
        items.add(("u", lo, hi))
    return items


def _pair(item: _Item) -> frozenset[str]:
    return frozenset(item[1:])


def _cpdag_match(p: _Item, t: _Item) -> bool:
    if _pair(p) != _pair(t):
        return False
    if p[0] == "u" or t[0] == "u":
        return True
    return p == t


def _check_node_sets(pred: CausalGraph, truth: CausalGraph) -> None:
    pred_names, truth_names = set(pred.node_names), set(truth.node_names)
    if pred_names != truth_names:
        raise NodeSetMismatchError(
            missing=truth_names - pred_names, extra=pred_names - truth_names
        )


def edge_metrics(
    pred: CausalGraph,
    truth: CausalGraph,
    mode: str = DEFAULT_MODE,
) -> EvalReport:
    """
    Compare a predicted graph with the truth graph.

    ``directed_strict`` matches ordered pairs exactly; a predicted
    undirected edge only matches an undirected truth edge. ``skeleton``
    compares unordered adjacencies. ``cpdag_aware`` lets an undirected
    edge on either side match any orientation of the same pair.

    Args:
        pred: Predicted graph
        truth: Truth graph over the same node names
        mode: One of MATCHING_MODES

    Returns:
        EvalReport

    Raises:
        NodeSetMismatchError: If the node name sets differ
        EvalError: If mode is unknown
    """
    if mode not in MATCHING_MODES:
        raise EvalError(f"Unknown matching mode: {mode} (expected one of {MATCHING_MODES})")
    _check_node_sets(pred, truth)

    if mode == "skeleton":
        p_pairs = {frozenset(e) for e in pred.edge_names() + pred.undirected_names()}
        t_pairs = {frozenset(e) for e in truth.edge_names() + truth.undirected_names()}
        tp = len(p_pairs & t_pairs)
        return EvalReport.from_counts(tp, len(p_pairs) - tp, len(t_pairs) - tp, mode)

    p_items, t_items = _items(pred), _items(truth)
    if mode == "directed_strict":
        tp = len(p_items & t_items)
        return EvalReport.from_counts(tp, len(p_items) - tp, len(t_items) - tp, mode)

    tp = sum(1 for p in p_items if any(_cpdag_match(p, t) for t in t_items))
    fn = sum(1 for t in t_items if not any(_cpdag_match(p, t) for p in p_items))
    return EvalReport.from_counts(tp, len(p_items) - tp, fn, mode)


@dataclass(frozen=True)
class NegativeComplianceReport:
    """Forbidden directed pairs that appear in a predicted graph."""

    n_forbidden: int
    n_violated: int
    violations: tuple[tuple[str, str], ...] = field(default=())

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_forbidden": self.n_forbidden,
            "n_violated": self.n_violated,
            "violations": [list(v) for v in self.violations],
        }


def negative_compliance(
    pred: CausalGraph,
    forbidden: Iterable[tuple[str, str]],
) -> NegativeComplianceReport:
    """
    List every forbidden pair present in pred.

    An undirected predicted edge violates both directions of its pair.
    Forbidden pairs naming nodes absent from pred cannot be violated.
    """
    forbidden_set = {(a.strip(), b.strip()) for a, b in forbidden}
    violations = []
    for a, b in sorted(forbidden_set):
        if not (pred.has_node(a) and pred.has_node(b)):
            continue
        i, j = pred.index(a), pred.index(b)
        if pred.has_directed(i, j) or pred.has_undirected(i, j):
            violations.append((a, b))
    return NegativeComplianceReport(len(forbidden_set), len(violations), tuple(violations))
