"""Custom exceptions for conditional-independence tests."""

from collections.abc import Iterable

from hybrid_pc.exceptions import HybridPCError


class CITestError(HybridPCError):
    """
    Base exception for CI test failures.

    The offending (x, y, cond_set) triple is attached by the test runner so
    errors surfacing from PC or pruning name the query that failed.
    """

    def __init__(
        self,
        message: str,
        x: str | None = None,
        y: str | None = None,
        cond_set: Iterable[str] = (),
    ):
        self.detail = message
        self.x = x
        self.y = y
        self.cond_set = tuple(cond_set)
        super().__init__(self._format())

    def _format(self) -> str:
        if self.x is None:
            return self.detail
        return f"{self.detail} (testing {self.x} _||_ {self.y} | {{{', '.join(self.cond_set)}}})"

    def attach(self, x: str, y: str, cond_set: Iterable[str]) -> "CITestError":
        """Record the query triple if none is attached yet."""
        if self.x is None:
            self.x, self.y, self.cond_set = x, y, tuple(cond_set)
            self.message = self._format()
            self.args = (self.message,)
        return self


class DegenerateDataError(CITestError):
    """Raised for constant columns or kernels with zero bandwidth."""


class NumericalError(CITestError):
    """Raised when a correlation submatrix stays singular after regularization."""
