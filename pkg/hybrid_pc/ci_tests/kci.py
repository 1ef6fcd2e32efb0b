"""Kernel conditional-independence (KCI) test for non-linear dependence."""

import logging
import threading
from collections.abc import Sequence
from typing import Any

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.stats import gamma

from hybrid_pc.dataset import Dataset

from . import register_ci_test
from .base import BaseCITest
from .exceptions import CITestError, DegenerateDataError

logger = logging.getLogger(__name__)

MIN_SAMPLES = 20
MAX_ROWS = 1200
BANDWIDTH_ROWS = 1000
KERNEL_RIDGE = 1e-3
EIG_THRESHOLD = 1e-5
MAX_EIGENVECTORS = 50


def stride_subsample(n: int, limit: int) -> np.ndarray:
    """Evenly spaced row indices, at most ``limit`` of them."""
    if n <= limit:
        return np.arange(n)
    return np.linspace(0, n - 1, num=limit).astype(np.int64)


def center_gram(k: np.ndarray) -> np.ndarray:
    """H K H with H = I - 11'/n."""
    row_mean = k.mean(axis=0, keepdims=True)
    col_mean = k.mean(axis=1, keepdims=True)
    return k - row_mean - col_mean + k.mean()


def median_bandwidth(x: np.ndarray, seed: int, max_rows: int = BANDWIDTH_ROWS) -> float:
    """
    Median heuristic bandwidth on at most ``max_rows`` rows.

    Raises:
        DegenerateDataError: If every pairwise distance is zero
    """
    if x.shape[0] > max_rows:
        rng = np.random.default_rng(seed)
        rows = np.sort(rng.choice(x.shape[0], size=max_rows, replace=False))
        x = x[rows]
    dists = pdist(x, metric="euclidean")
    dists = dists[dists > 0]
    if dists.size == 0:
        raise DegenerateDataError("Kernel bandwidth is degenerate: all pairwise distances are zero")
    return float(np.median(dists))


def rbf_gram(x: np.ndarray, width: float) -> np.ndarray:
    sq = squareform(pdist(x, metric="sqeuclidean"))
    return np.exp(-sq / (2.0 * width * width))


def _scaled_eigenvectors(k: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(0.5 * (k + k.T))
    order = np.argsort(values)[::-1]
    values, vectors = values[order], vectors[:, order]
    keep = values > values.max() * EIG_THRESHOLD
    keep[MAX_EIGENVECTORS:] = False
    return vectors[:, keep] * np.sqrt(values[keep])


def gamma_p_value(statistic: float, mean: float, var: float) -> float:
    """Upper tail of a gamma law matched to the null mean and variance."""
    if mean <= 0 or var <= 0:
        return 1.0
    shape = mean * mean / var
    scale = var / mean
    return float(gamma.sf(statistic, shape, scale=scale))


def kci_unconditional(kx: np.ndarray, ky: np.ndarray) -> tuple[float, float]:
    """HSIC-style statistic on centered Gram matrices with its gamma p-value."""
    n = kx.shape[0]
    kx, ky = center_gram(kx), center_gram(ky)
    statistic = float(np.sum(kx * ky))
    mean = float(np.trace(kx) * np.trace(ky) / n)
    var = float(2.0 * np.sum(kx * kx) * np.sum(ky * ky) / (n * n))
    return statistic, gamma_p_value(statistic, mean, var)


def kci_conditional(kx: np.ndarray, ky: np.ndarray, kz: np.ndarray) -> tuple[float, float]:
    """
    Conditional statistic on Gram matrices residualized by kernel ridge regression on z.

    Args:
        kx: Gram matrix of x (built on x and z)
        ky: Gram matrix of y
        kz: Gram matrix of z

    Returns:
        (statistic, p_value)
    """
    n = kx.shape[0]
    kx, ky, kz = center_gram(kx), center_gram(ky), center_gram(kz)
    rz = KERNEL_RIDGE * np.linalg.inv(kz + KERNEL_RIDGE * np.eye(n))
    kxr = rz @ kx @ rz
    kyr = rz @ ky @ rz
    statistic = float(np.sum(kxr * kyr))

    vx = _scaled_eigenvectors(kxr)
    vy = _scaled_eigenvectors(kyr)
    uu = (vx[:, :, None] * vy[:, None, :]).reshape(n, -1)
    if uu.shape[1] > n:
        uu_prod = uu @ uu.T
    else:
        uu_prod = uu.T @ uu
    mean = float(np.trace(uu_prod))
    var = float(2.0 * np.sum(uu_prod * uu_prod))
    return statistic, gamma_p_value(statistic, mean, var)


@register_ci_test("kci")
class KCITest(BaseCITest):
    """
    Kernel CI test with Gaussian RBF kernels and a gamma-approximated null.

    Columns are standardized; datasets larger than 1200 rows are reduced by
    a deterministic stride. Bandwidths use the median heuristic on at most
    1000 rows drawn with ``seed``. Gram matrices are cached per variable
    block so concurrent PC workers share them.
    """

    def __init__(self, data: Dataset, seed: int = 0, **_: Any):
        if data.n_samples < MIN_SAMPLES:
            raise CITestError(f"KCI needs at least {MIN_SAMPLES} samples, got {data.n_samples}")
        self.data = data
        self.seed = seed
        rows = stride_subsample(data.n_samples, MAX_ROWS)
        if rows.size < data.n_samples:
            logger.info(f"KCI subsampling {data.n_samples} rows to {rows.size}")
        values = data.values[rows]
        std = values.std(axis=0)
        self._constant = {i for i, v in enumerate(std) if v == 0.0}
        safe = np.where(std > 0, std, 1.0)
        self._values = (values - values.mean(axis=0)) / safe
        self._grams: dict[tuple[tuple[int, ...], tuple[int, ...]], np.ndarray] = {}
        self._lock = threading.Lock()

    @property
    def variables(self) -> Sequence[str]:
        return self.data.columns

    def _gram(self, cols: tuple[int, ...], half_cols: tuple[int, ...] = ()) -> np.ndarray:
        key = (cols, half_cols)
        with self._lock:
            cached = self._grams.get(key)
        if cached is not None:
            return cached
        block = self._values[:, list(cols)]
        if half_cols:
            block = np.hstack([block, 0.5 * self._values[:, list(half_cols)]])
        gram = rbf_gram(block, median_bandwidth(block, self.seed))
        with self._lock:
            self._grams.setdefault(key, gram)
        return gram

    def _run(self, x: int, y: int, s: tuple[int, ...]) -> tuple[float, float]:
        constant = [self.data.columns[i] for i in (x, y, *s) if i in self._constant]
        if constant:
            raise DegenerateDataError(f"Constant column(s): {', '.join(constant)}")

        if not s:
            return kci_unconditional(self._gram((x,)), self._gram((y,)))

        cond = tuple(sorted(s))
        return kci_conditional(
            self._gram((x,), cond),
            self._gram((y,)),
            self._gram(cond),
        )
