"""Exact CI oracle answering queries by d-separation in a known DAG."""

from collections.abc import Sequence
from typing import Any

from hybrid_pc.graph.algorithms import d_separated
from hybrid_pc.graph.models import CausalGraph

from . import register_ci_test
from .base import BaseCITest, CiTestResult


@register_ci_test("oracle")
class DSepOracleTest(BaseCITest):
    """p = 1.0 when x and y are d-separated by s in the truth graph, else 0.0."""

    def __init__(self, graph: CausalGraph, **_: Any):
        self.graph = graph

    @property
    def variables(self) -> Sequence[str]:
        return self.graph.node_names

    def _run(self, x: int, y: int, s: tuple[int, ...]) -> tuple[float, float]:
        names = self.graph.node_names
        separated = d_separated(self.graph, names[x], names[y], [names[i] for i in s])
        return 0.0, 1.0 if separated else 0.0


def d_sep_oracle_test(g: CausalGraph, x: str, y: str, s: Sequence[str] = ()) -> CiTestResult:
    """One-shot oracle query; see DSepOracleTest."""
    return DSepOracleTest(g).test(x, y, s)
