"""Memorization tests: reveal part of a benchmark graph and score the completion."""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from hybrid_pc.graph.models import CausalGraph

from .exceptions import PriorError
from .parsing import PriorResponse
from .prompts import (
    render_dataset_name,
    render_full_graph,
    render_graph_completion,
    render_guided_edges,
    render_m1,
    render_m2,
    render_m3,
    render_recognition,
    render_unguided_edges,
)

logger = logging.getLogger(__name__)

MEM_STREAM = 21
NODE_SUBSTREAM = 0
EDGE_SUBSTREAM = 1

TASK_KINDS = (
    "M1",
    "M2",
    "M3",
    "guided_edges",
    "unguided_edges",
    "full_graph",
    "dataset_name",
    "graph_completion",
)

# kinds whose prediction is scored against hidden nodes / hidden edges
NODE_SCORED_KINDS = frozenset({"M1", "M3", "full_graph", "graph_completion"})
EDGE_SCORED_KINDS = frozenset({"M2", "M3", "guided_edges", "unguided_edges", "full_graph"})


def reveal_count(alpha: float, total: int) -> int:
    """round(alpha * total) with halves rounded up."""
    return min(total, math.floor(round(alpha * total, 9) + 0.5))


@dataclass(frozen=True)
class MemTask:
    """
    One memorization task.

    M1 and graph_completion split the node list. M2 splits the edge list
    (all nodes are given). M3 splits the node list and reveals exactly the
    edges between revealed nodes, so no revealed edge names a hidden node.
    guided_edges and unguided_edges hide every edge, full_graph hides
    everything and dataset_name reveals everything; ``alpha`` has no
    effect on these. Revealed and hidden items keep the graph's order.
    """

    kind: str
    alpha: float
    seed: int
    revealed_nodes: tuple[str, ...] = ()
    hidden_nodes: tuple[str, ...] = ()
    revealed_edges: tuple[tuple[str, str], ...] = ()
    hidden_edges: tuple[tuple[str, str], ...] = ()
    all_nodes: tuple[str, ...] = field(default=(), repr=False)


def _split(items: Sequence[object], alpha: float, seed: int, substream: int) -> list[bool]:
    k = reveal_count(alpha, len(items))
    rng = np.random.default_rng(np.random.SeedSequence([seed, MEM_STREAM, substream]))
    chosen = set(rng.choice(len(items), size=k, replace=False).tolist()) if k else set()
    return [i in chosen for i in range(len(items))]


def split_for_mem(g: CausalGraph, kind: str, alpha: float, seed: int) -> MemTask:
    """
    Draw a seeded reveal/hide split for a memorization task.

    Args:
        g: Benchmark graph
        kind: One of TASK_KINDS
        alpha: Fraction of items to reveal, in [0, 1]
        seed: Non-negative seed

    Returns:
        MemTask
    """
    if kind not in TASK_KINDS:
        raise PriorError(f"Unknown memorization task: {kind}")
    if not 0.0 <= alpha <= 1.0:
        raise PriorError(f"alpha must lie in [0, 1], got {alpha}")

    names = g.node_names
    edges = tuple(g.edge_names())
    nodes_revealed: tuple[str, ...] = ()
    nodes_hidden: tuple[str, ...] = ()
    edges_revealed: tuple[tuple[str, str], ...] = ()
    edges_hidden: tuple[tuple[str, str], ...] = ()

    if kind in ("M1", "M3", "graph_completion"):
        mask = _split(names, alpha, seed, NODE_SUBSTREAM)
        nodes_revealed = tuple(n for n, m in zip(names, mask) if m)
        nodes_hidden = tuple(n for n, m in zip(names, mask) if not m)
    if kind == "M2":
        mask = _split(edges, alpha, seed, EDGE_SUBSTREAM)
        edges_revealed = tuple(e for e, m in zip(edges, mask) if m)
        edges_hidden = tuple(e for e, m in zip(edges, mask) if not m)
    elif kind == "M3":
        shown = set(nodes_revealed)
        edges_revealed = tuple(e for e in edges if e[0] in shown and e[1] in shown)
        edges_hidden = tuple(e for e in edges if not (e[0] in shown and e[1] in shown))
    elif kind in ("guided_edges", "unguided_edges"):
        edges_hidden = edges
    elif kind == "full_graph":
        nodes_hidden, edges_hidden = names, edges
    elif kind == "dataset_name":
        nodes_revealed, edges_revealed = names, edges

    return MemTask(
        kind=kind,
        alpha=alpha,
        seed=seed,
        revealed_nodes=nodes_revealed,
        hidden_nodes=nodes_hidden,
        revealed_edges=edges_revealed,
        hidden_edges=edges_hidden,
        all_nodes=names,
    )


def render_mem_prompt(task: MemTask, dataset_name: str) -> str:
    """Instantiate the template for the task kind."""
    if task.kind == "M1":
        return render_m1(dataset_name, task.revealed_nodes)
    if task.kind == "M2":
        return render_m2(dataset_name, task.all_nodes, task.revealed_edges)
    if task.kind == "M3":
        return render_m3(dataset_name, task.revealed_nodes, task.revealed_edges)
    if task.kind == "guided_edges":
        return render_guided_edges(dataset_name, task.all_nodes)
    if task.kind == "unguided_edges":
        return render_unguided_edges(task.all_nodes)
    if task.kind == "full_graph":
        return render_full_graph(dataset_name)
    if task.kind == "dataset_name":
        return render_dataset_name(task.revealed_nodes, task.revealed_edges)
    return render_graph_completion(dataset_name, task.revealed_nodes)


def render_recognition_prompt(dataset_name: str) -> str:
    return render_recognition(dataset_name)


@dataclass(frozen=True)
class F1Score:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_sets(cls, predicted: set[object], truth: set[object]) -> "F1Score":
        if not predicted and not truth:
            return cls(1.0, 1.0, 1.0)
        tp = len(predicted & truth)
        precision = tp / len(predicted) if predicted else 0.0
        recall = tp / len(truth) if truth else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return cls(precision, recall, f1)

    def to_dict(self) -> dict[str, float]:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


ZERO = F1Score(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class MemScore:
    """
    Scores for one task.

    ``nodes`` and ``edges`` are filled for the kinds scored on them;
    dataset_name fills ``name_match`` only.
    """

    kind: str
    nodes: F1Score | None = None
    edges: F1Score | None = None
    name_match: bool | None = None
    parse_error: str | None = None

    def to_dict(self) -> dict[str, object]:
        out: dict[str, object] = {"kind": self.kind, "parse_error": self.parse_error}
        if self.nodes is not None:
            out["nodes"] = self.nodes.to_dict()
        if self.edges is not None:
            out["edges"] = self.edges.to_dict()
        if self.name_match is not None:
            out["name_match"] = self.name_match
        return out


def _node_key(name: str) -> str:
    return name.strip().casefold()


def _node_set(names: Iterable[str]) -> set[object]:
    return {_node_key(n) for n in names}


def _edge_set(edges: Iterable[tuple[str, str]]) -> set[object]:
    return {(_node_key(a), _node_key(b)) for a, b in edges}


def name_matches(predicted: Iterable[str], dataset_name: str) -> bool:
    """True when any predicted name contains the dataset name, ignoring case."""
    expected = _node_key(dataset_name)
    return bool(expected) and any(expected in _node_key(p) for p in predicted)


def score_mem(
    response: PriorResponse,
    task: MemTask,
    dataset_name: str | None = None,
) -> MemScore:
    """
    Score the predicted hidden items against the true hidden items.

    A response that failed to parse scores zero on every component. The
    dataset_name kind is scored by ``name_matches`` against ``dataset_name``.

    Raises:
        PriorError: If a dataset_name task is scored without a dataset name
    """
    scores_nodes = task.kind in NODE_SCORED_KINDS
    scores_edges = task.kind in EDGE_SCORED_KINDS
    scores_name = task.kind == "dataset_name"
    if scores_name and not dataset_name:
        raise PriorError("Scoring a dataset_name task needs the true dataset name")
    if not response.ok:
        logger.warning(f"{task.kind} response did not parse: {response.error}")
        return MemScore(
            kind=task.kind,
            nodes=ZERO if scores_nodes else None,
            edges=ZERO if scores_edges else None,
            name_match=False if scores_name else None,
            parse_error=response.error,
        )
    return MemScore(
        kind=task.kind,
        nodes=(
            F1Score.from_sets(_node_set(response.nodes or ()), _node_set(task.hidden_nodes))
            if scores_nodes
            else None
        ),
        edges=(
            F1Score.from_sets(_edge_set(response.edges or ()), _edge_set(task.hidden_edges))
            if scores_edges
            else None
        ),
        name_match=(
            name_matches(response.nodes or (), dataset_name or "") if scores_name else None
        ),
    )
