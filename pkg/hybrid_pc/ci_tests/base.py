"""Base class for conditional-independence tests."""

from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .exceptions import CITestError


@dataclass(frozen=True)
class CiTestResult:
    """Outcome of one conditional-independence query."""

    statistic: float
    p_value: float
    x: str
    y: str
    cond_set: frozenset[str]
    test_kind: str

    def independent(self, alpha: float) -> bool:
        """True if the test fails to reject independence at level alpha."""
        return self.p_value > alpha


class BaseCITest(ABC):
    """
    Base class for CI tests.

    Subclasses implement ``_run`` on column indices; ``test`` validates the
    query, resolves names and attaches the query to any raised CITestError.
    """

    test_kind: str = ""

    @property
    @abstractmethod
    def variables(self) -> Sequence[str]:
        """Variable names this test can be queried about, in index order."""

    @abstractmethod
    def _run(self, x: int, y: int, s: tuple[int, ...]) -> tuple[float, float]:
        """
        Compute the test on resolved indices.

        Args:
            x: Index of the first variable
            y: Index of the second variable
            s: Indices of the conditioning variables

        Returns:
            (statistic, p_value)
        """

    def _resolve(self, name: str) -> int:
        try:
            return list(self.variables).index(name.strip())
        except ValueError:
            raise CITestError(f"Unknown variable: {name}") from None

    def test(self, x: str, y: str, s: Iterable[str] = ()) -> CiTestResult:
        """
        Test x _||_ y | s.

        Args:
            x: First variable name
            y: Second variable name
            s: Conditioning variable names

        Returns:
            CiTestResult with p_value clipped to [0, 1]

        Raises:
            CITestError: On invalid queries or test failures
        """
        s = tuple(s)
        try:
            xi, yi = self._resolve(x), self._resolve(y)
            si = tuple(self._resolve(v) for v in s)
            if xi == yi:
                raise CITestError("x and y must be distinct")
            if xi in si or yi in si:
                raise CITestError("Conditioning set must exclude x and y")
            statistic, p_value = self._run(xi, yi, si)
        except CITestError as e:
            raise e.attach(x, y, s)

        return CiTestResult(
            statistic=float(statistic),
            p_value=min(1.0, max(0.0, float(p_value))),
            x=x,
            y=y,
            cond_set=frozenset(s),
            test_kind=self.test_kind,
        )
