"""Pytest fixtures for hybrid-pc tests."""

from collections.abc import Iterable

import numpy as np
import pytest

from hybrid_pc.dataset import Dataset
from hybrid_pc.graph.models import CausalGraph, Node


class ScriptedCompleter:
    """Completer stub that answers from a function and records every prompt."""

    def __init__(self, answer):
        self.answer = answer
        self.prompts: list[str] = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        return self.answer(prompt)


def graph(names: Iterable[str], edges: Iterable[tuple[str, str]] = (), **kwargs) -> CausalGraph:
    return CausalGraph.from_edges(list(names), list(edges), **kwargs)


@pytest.fixture
def chain() -> CausalGraph:
    """X -> Y -> Z."""
    return graph("XYZ", [("X", "Y"), ("Y", "Z")], name="chain")


@pytest.fixture
def collider() -> CausalGraph:
    """X -> Z <- Y."""
    return graph("XYZ", [("X", "Z"), ("Y", "Z")], name="collider")


@pytest.fixture
def diamond() -> CausalGraph:
    """A -> B, A -> C, B -> D, C -> D."""
    return graph("ABCD", [("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")], name="diamond")


@pytest.fixture
def described_nodes() -> list[Node]:
    return [
        Node("smoke", "smoking"),
        Node("lung", "lung cancer"),
        Node("xray", None),
    ]


@pytest.fixture
def chain_data() -> Dataset:
    """Linear Gaussian chain X -> Y -> Z with unit weights."""
    rng = np.random.default_rng(0)
    n = 2000
    x = rng.standard_normal(n)
    y = x + rng.standard_normal(n)
    z = y + rng.standard_normal(n)
    return Dataset(("X", "Y", "Z"), np.column_stack([x, y, z]))


@pytest.fixture
def independent_data() -> Dataset:
    rng = np.random.default_rng(1)
    return Dataset(("A", "B", "C"), rng.standard_normal((500, 3)))
