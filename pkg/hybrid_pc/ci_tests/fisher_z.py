"""Fisher-Z partial-correlation test for linear dependence."""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
from scipy.stats import norm

from hybrid_pc.dataset import Dataset

from . import register_ci_test
from .base import BaseCITest
from .exceptions import DegenerateDataError, NumericalError

logger = logging.getLogger(__name__)

RIDGE = 1e-10
RHO_CLAMP = 1.0 - 1e-12
# plain inversion is trusted below this condition number
SINGULAR_COND = 1e12


def partial_correlation(corr: np.ndarray) -> float:
    """
    Partial correlation of the first two variables given the rest.

    Args:
        corr: Correlation matrix ordered as [x, y, *s]

    Returns:
        rho(x, y | s)

    Raises:
        NumericalError: If the matrix is singular even after the ridge
    """
    sub = corr
    if not np.isfinite(sub).all():
        raise NumericalError("Correlation submatrix has non-finite entries")

    if np.linalg.cond(sub) >= SINGULAR_COND:
        logger.debug(f"Correlation submatrix near-singular, adding ridge {RIDGE}")
        sub = sub + RIDGE * np.eye(sub.shape[0])
    try:
        precision = np.linalg.inv(sub)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Singular correlation submatrix: {e}") from e
    if not np.isfinite(precision).all():
        raise NumericalError("Singular correlation submatrix after regularization")

    denom = np.sqrt(precision[0, 0] * precision[1, 1])
    if not np.isfinite(denom) or denom <= 0:
        raise NumericalError("Correlation submatrix is not positive definite")
    return float(-precision[0, 1] / denom)


@register_ci_test("fisher_z")
class FisherZTest(BaseCITest):
    """
    Fisher-Z test on partial correlations.

    The full correlation matrix is computed once; each query inverts the
    submatrix over {x, y} union s. The pair is put in column order before
    inversion so swapping x and y gives bit-identical results.
    """

    def __init__(self, data: Dataset, **_: Any):
        self.data = data
        std = data.values.std(axis=0)
        self._constant = {i for i, v in enumerate(std) if v == 0.0}
        with np.errstate(invalid="ignore", divide="ignore"):
            self._corr = np.corrcoef(data.values, rowvar=False).reshape(data.n_vars, data.n_vars)

    @property
    def variables(self) -> Sequence[str]:
        return self.data.columns

    def _run(self, x: int, y: int, s: tuple[int, ...]) -> tuple[float, float]:
        n = self.data.n_samples
        if n <= len(s) + 3:
            raise NumericalError(
                f"Fisher-Z needs more than {len(s) + 3} samples, dataset has {n}"
            )
        constant = [self.data.columns[i] for i in (x, y, *s) if i in self._constant]
        if constant:
            raise DegenerateDataError(f"Constant column(s): {', '.join(constant)}")

        a, b = (x, y) if x < y else (y, x)
        idx = [a, b, *s]
        rho = partial_correlation(self._corr[np.ix_(idx, idx)])
        rho = min(RHO_CLAMP, max(-RHO_CLAMP, rho))

        z = 0.5 * np.log((1.0 + rho) / (1.0 - rho)) * np.sqrt(n - len(s) - 3)
        p_value = 2.0 * norm.sf(abs(z))
        return float(z), float(p_value)
