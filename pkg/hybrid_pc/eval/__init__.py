"""Edge metrics, negative-edge compliance and the benchmark grid."""

from .bench import BenchConfig, BenchDataset, BenchResult, BenchRow, bench_matrix, write_bench
from .exceptions import BenchConfigError, EvalError
from .methods import MethodContext, get_method, get_supported_methods, register_method
from .metrics import (
    MATCHING_MODES,
    EvalReport,
    NegativeComplianceReport,
    edge_metrics,
    f1_score,
    negative_compliance,
)

__all__ = [
    "MATCHING_MODES",
    "BenchConfig",
    "BenchConfigError",
    "BenchDataset",
    "BenchResult",
    "BenchRow",
    "EvalError",
    "EvalReport",
    "MethodContext",
    "NegativeComplianceReport",
    "bench_matrix",
    "edge_metrics",
    "f1_score",
    "get_method",
    "get_supported_methods",
    "negative_compliance",
    "register_method",
    "write_bench",
]
