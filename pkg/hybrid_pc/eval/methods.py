"""Registry of discovery methods runnable from a bench configuration."""

from collections.abc import Callable
from dataclasses import dataclass

from hybrid_pc.dataset import Dataset
from hybrid_pc.graph.models import CausalGraph
from hybrid_pc.pc import PcConfig, PriorKnowledge, discover

from .exceptions import BenchConfigError


@dataclass(frozen=True)
class MethodContext:
    """Inputs available to a method for one bench run."""

    truth: CausalGraph
    data: Dataset | None
    prior: PriorKnowledge
    prior_graph: CausalGraph | None
    alpha: float
    seed: int
    jobs: int = 1
    forbid_mode: str = "skeleton"

    def require_data(self, method: str) -> Dataset:
        if self.data is None:
            raise BenchConfigError(f"Method '{method}' needs a dataset")
        return self.data

    def require_prior(self, method: str) -> PriorKnowledge:
        if self.prior.is_empty:
            raise BenchConfigError(f"Method '{method}' needs a prior")
        return self.prior


Method = Callable[[MethodContext], CausalGraph]

# Registry of methods
_METHODS: dict[str, Method] = {}

# CI test used when a method's output is pruned
_PRUNE_TESTS: dict[str, str] = {}


def register_method(name: str, prune_test: str = "fisher_z") -> Callable[[Method], Method]:
    """Decorator to register a method under a bench selector name."""
    def decorator(fn: Method) -> Method:
        _METHODS[name] = fn
        _PRUNE_TESTS[name] = prune_test
        return fn
    return decorator


def get_method(name: str) -> Method:
    method = _METHODS.get(name)
    if method is None:
        raise BenchConfigError(
            f"Unknown method '{name}' (supported: {', '.join(get_supported_methods())})"
        )
    return method


def prune_test_for(name: str) -> str:
    return _PRUNE_TESTS[name]


def get_supported_methods() -> list[str]:
    """Get list of registered method names."""
    return sorted(_METHODS)


def _pc(ctx: MethodContext, ci_test: str, prior: PriorKnowledge | None) -> CausalGraph:
    cfg = PcConfig(
        alpha=ctx.alpha,
        ci_test=ci_test,
        jobs=ctx.jobs,
        forbid_mode=ctx.forbid_mode,
        kci_seed=ctx.seed,
    )
    return discover(ctx.require_data(f"pc/{ci_test}"), cfg, prior)


@register_method("pc")
def plain_pc(ctx: MethodContext) -> CausalGraph:
    return _pc(ctx, "fisher_z", None)


@register_method("pc-kci", prune_test="kci")
def kernel_pc(ctx: MethodContext) -> CausalGraph:
    return _pc(ctx, "kci", None)


@register_method("pc+prior")
def hybrid_pc(ctx: MethodContext) -> CausalGraph:
    return _pc(ctx, "fisher_z", ctx.require_prior("pc+prior"))


@register_method("pc-kci+prior", prune_test="kci")
def hybrid_kernel_pc(ctx: MethodContext) -> CausalGraph:
    return _pc(ctx, "kci", ctx.require_prior("pc-kci+prior"))


@register_method("prior")
def prior_only(ctx: MethodContext) -> CausalGraph:
    """The prior graph itself, relabeled onto the truth's node order."""
    if ctx.prior_graph is None:
        raise BenchConfigError("Method 'prior' needs a prior graph")
    return CausalGraph.from_edges(ctx.truth.nodes, ctx.prior_graph.edge_names())


@register_method("oracle", prune_test="oracle")
def oracle_pc(ctx: MethodContext) -> CausalGraph:
    """Plain PC driven by d-separation in the truth graph."""
    return discover(ctx.truth, PcConfig(ci_test="oracle", jobs=ctx.jobs))
