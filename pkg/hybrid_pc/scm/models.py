"""Specifications and realized parameters of structural causal models."""

import re
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

from hybrid_pc.graph.models import CausalGraph

from .exceptions import ScmError

_DESCRIPTOR = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\))?\s*$")

ACTIVATIONS = {
    "relu": lambda v: np.maximum(v, 0.0),
    "tanh": np.tanh,
    "sigmoid": lambda v: 1.0 / (1.0 + np.exp(-v)),
}


def _parse_descriptor(text: str) -> tuple[str, float | None, float | None]:
    match = _DESCRIPTOR.match(text.lower())
    if match is None:
        raise ScmError(f"Cannot parse distribution descriptor: {text!r}")
    kind, a, b = match.groups()
    try:
        return kind, (float(a) if a is not None else None), (float(b) if b is not None else None)
    except ValueError:
        raise ScmError(f"Non-numeric parameter in descriptor: {text!r}") from None


@dataclass(frozen=True)
class Distribution:
    """
    Parameter distribution descriptor.

    ``uniform(lo,hi)``, ``normal(mean,std)`` or ``xavier_normal`` (zero mean,
    std sqrt(2 / (fan_in + fan_out)) for a weight matrix).
    """

    kind: str
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self) -> None:
        if self.kind == "uniform" and not self.a < self.b:
            raise ScmError(f"uniform({self.a},{self.b}) needs lo < hi")
        if self.kind == "normal" and not self.b > 0:
            raise ScmError(f"normal({self.a},{self.b}) needs std > 0")
        if self.kind not in ("uniform", "normal", "xavier_normal"):
            raise ScmError(f"Unknown distribution kind: {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        kind, a, b = _parse_descriptor(text)
        if kind == "xavier_normal":
            if a is not None:
                raise ScmError("xavier_normal takes no parameters")
            return cls("xavier_normal")
        if kind in ("gaussian", "standard_normal"):
            kind = "normal"
            if a is None:
                a, b = 0.0, 1.0
        if a is None or b is None:
            raise ScmError(f"Distribution {text!r} needs two parameters")
        return cls(kind, a, b)

    def draw(self, rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
        if self.kind == "uniform":
            return rng.uniform(self.a, self.b, size=shape)
        if self.kind == "normal":
            return rng.normal(self.a, self.b, size=shape)
        fan_in = shape[0]
        fan_out = shape[1] if len(shape) > 1 else 1
        return rng.normal(0.0, np.sqrt(2.0 / (fan_in + fan_out)), size=shape)

    def __str__(self) -> str:
        if self.kind == "xavier_normal":
            return self.kind
        return f"{self.kind}({self.a:g},{self.b:g})"


@dataclass(frozen=True)
class NoiseSpec:
    """Exogenous noise law for non-root nodes: gaussian(mean, std) or uniform(lo, hi)."""

    kind: str = "gaussian"
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self) -> None:
        if self.kind == "gaussian" and not self.b > 0:
            raise ScmError(f"gaussian noise needs std > 0, got {self.b}")
        if self.kind == "uniform" and not self.a < self.b:
            raise ScmError(f"uniform noise needs lo < hi, got ({self.a}, {self.b})")
        if self.kind not in ("gaussian", "uniform"):
            raise ScmError(f"Unknown noise kind: {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "NoiseSpec":
        kind, a, b = _parse_descriptor(text)
        if kind == "normal":
            kind = "gaussian"
        if a is None or b is None:
            raise ScmError(f"Noise descriptor {text!r} needs two parameters")
        return cls(kind, a, b)

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "gaussian":
            return rng.normal(self.a, self.b, size=size)
        return rng.uniform(self.a, self.b, size=size)

    def __str__(self) -> str:
        return f"{self.kind}({self.a:g},{self.b:g})"


@dataclass(frozen=True)
class MechanismSpec:
    """
    Structural mechanism family for non-root nodes.

    For ``mlp``, ``depth`` counts weight matrices: depth 3 means two hidden
    layers of ``width`` units followed by a linear output layer.
    """

    kind: str = "linear"
    coef_dist: Distribution = field(default_factory=lambda: Distribution("uniform", 0.0, 2.0))
    depth: int = 3
    width: int = 4
    activation: str = "relu"
    init_dist: Distribution = field(default_factory=lambda: Distribution("uniform", 0.0, 1.0))

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "mlp"):
            raise ScmError(f"Unknown mechanism kind: {self.kind}")
        if self.kind == "mlp":
            if self.depth < 2:
                raise ScmError(f"MLP depth must be at least 2, got {self.depth}")
            if self.width < 1:
                raise ScmError(f"MLP width must be at least 1, got {self.width}")
            if self.activation not in ACTIVATIONS:
                raise ScmError(f"Unknown activation: {self.activation}")

    def describe(self) -> dict[str, str | int]:
        if self.kind == "linear":
            return {"kind": "linear", "coef_dist": str(self.coef_dist)}
        return {
            "kind": "mlp",
            "depth": self.depth,
            "width": self.width,
            "activation": self.activation,
            "init_dist": str(self.init_dist),
        }


@dataclass(frozen=True, eq=False)
class LinearParams:
    """Weight vector w with f(pa) = w' pa."""

    weights: np.ndarray

    def apply(self, parents: np.ndarray) -> np.ndarray:
        return parents @ self.weights


@dataclass(frozen=True, eq=False)
class MlpParams:
    """Weight matrices and hidden-layer biases; the output layer has no bias."""

    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]
    activation: str = "relu"

    def apply(self, parents: np.ndarray) -> np.ndarray:
        act = ACTIVATIONS[self.activation]
        h = parents
        for w, b in zip(self.weights[:-1], self.biases):
            h = act(h @ w + b)
        return (h @ self.weights[-1])[:, 0]

    @property
    def shapes(self) -> list[tuple[int, ...]]:
        return [w.shape for w in self.weights]


NodeParams = Union[LinearParams, MlpParams]


@dataclass(frozen=True, eq=False)
class ScmSpec:
    """A DAG with realized mechanism parameters for every non-root node."""

    graph: CausalGraph
    mechanism: MechanismSpec
    noise: NoiseSpec
    seed: int
    params: dict[str, NodeParams]

    def with_params(self, node: str, params: NodeParams) -> "ScmSpec":
        """Copy with one node's mechanism replaced."""
        if node not in self.params:
            raise ScmError(f"Node {node} has no mechanism (root or unknown)")
        return replace(self, params={**self.params, node: params})
