"""Synthetic observational data from structural causal models."""

from .exceptions import ScmError
from .generator import build_scm, draw_noise, random_dag, sample
from .models import Distribution, LinearParams, MechanismSpec, MlpParams, NoiseSpec, ScmSpec

__all__ = [
    "Distribution",
    "LinearParams",
    "MechanismSpec",
    "MlpParams",
    "NoiseSpec",
    "ScmError",
    "ScmSpec",
    "build_scm",
    "draw_noise",
    "random_dag",
    "sample",
]
