"""Conditional-independence tests producing p-values."""

import importlib
from collections.abc import Callable
from pathlib import Path
from typing import Any

from .base import BaseCITest, CiTestResult
from .exceptions import CITestError, DegenerateDataError, NumericalError

# Registry of CI tests
_CI_TESTS: dict[str, type[BaseCITest]] = {}


def register_ci_test(test_kind: str) -> Callable[[type[BaseCITest]], type[BaseCITest]]:
    """Decorator to register a CI test class under a selector name."""
    def decorator(cls: type[BaseCITest]) -> type[BaseCITest]:
        cls.test_kind = test_kind
        _CI_TESTS[test_kind] = cls
        return cls
    return decorator


def get_ci_test(test_kind: str, source: Any, **options: Any) -> BaseCITest:
    """
    Build a CI test bound to its data source.

    Args:
        test_kind: Selector ("fisher_z", "kci", "oracle")
        source: Dataset for sample-based tests, CausalGraph for the oracle
        **options: Test-specific options (e.g. seed for kci)

    Returns:
        CI test instance

    Raises:
        CITestError: If the selector is unknown
    """
    test_class = _CI_TESTS.get(test_kind)
    if test_class is None:
        raise CITestError(
            f"Unknown CI test '{test_kind}' (supported: {', '.join(get_supported_tests())})"
        )
    return test_class(source, **options)  # type: ignore[call-arg]


def get_supported_tests() -> list[str]:
    """Get list of registered CI test selectors."""
    return sorted(_CI_TESTS)


# Auto-import all test modules to trigger registration
_tests_dir = Path(__file__).parent
for _module_path in sorted(_tests_dir.glob("*.py")):
    if _module_path.name not in ("__init__.py", "base.py", "exceptions.py"):
        importlib.import_module(f".{_module_path.stem}", package=__name__)

__all__ = [
    "BaseCITest",
    "CITestError",
    "CiTestResult",
    "DegenerateDataError",
    "NumericalError",
    "get_ci_test",
    "get_supported_tests",
    "register_ci_test",
]
