"""Building structural causal models and sampling observational data from them."""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from hybrid_pc.dataset import Dataset
from hybrid_pc.graph.algorithms import topological_indices
from hybrid_pc.graph.models import CausalGraph, Node

from .exceptions import ScmError
from .models import LinearParams, MechanismSpec, MlpParams, NodeParams, NoiseSpec, ScmSpec

logger = logging.getLogger(__name__)

# stream tags keep parameter, noise and graph draws on disjoint substreams
PARAM_STREAM = 1
NOISE_STREAM = 2
DAG_STREAM = 3

BLOCK_ROWS = 4096


def _check_seed(seed: int, label: str = "seed") -> int:
    if seed < 0:
        raise ScmError(f"{label} must be non-negative, got {seed}")
    return int(seed)


def _node_rng(*key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(key)))


def _build_params(mech: MechanismSpec, n_parents: int, rng: np.random.Generator) -> NodeParams:
    if mech.kind == "linear":
        return LinearParams(weights=mech.coef_dist.draw(rng, (n_parents,)))

    dims = [n_parents] + [mech.width] * (mech.depth - 1) + [1]
    weights = tuple(mech.init_dist.draw(rng, (dims[i], dims[i + 1])) for i in range(mech.depth))
    biases = tuple(np.zeros(mech.width) for _ in range(mech.depth - 1))
    return MlpParams(weights=weights, biases=biases, activation=mech.activation)


def build_scm(
    g: CausalGraph,
    mech: MechanismSpec,
    noise: NoiseSpec,
    seed: int,
) -> ScmSpec:
    """
    Realize mechanism parameters for every non-root node of a DAG.

    Each node draws from its own substream of ``seed`` so adding a node
    does not perturb the parameters of the others.

    Args:
        g: DAG
        mech: Mechanism family
        noise: Noise law for non-root nodes
        seed: Non-negative master seed

    Returns:
        ScmSpec

    Raises:
        CycleError: If g is not acyclic
    """
    seed = _check_seed(seed)
    topological_indices(g)
    params: dict[str, NodeParams] = {}
    for i, node in enumerate(g.nodes):
        parents = g.parents(i)
        if not parents:
            continue
        params[node.name] = _build_params(mech, len(parents), _node_rng(seed, i, PARAM_STREAM))
    logger.info(
        f"Built {mech.kind} SCM on {g.n_nodes} nodes ({len(params)} with mechanisms), seed {seed}"
    )
    return ScmSpec(graph=g, mechanism=mech, noise=noise, seed=seed, params=params)


def _sample_block(
    scm: ScmSpec,
    order: list[int],
    sample_seed: int,
    block: int,
    rows: int,
) -> tuple[np.ndarray, np.ndarray]:
    g = scm.graph
    values = np.zeros((rows, g.n_nodes))
    noise = np.zeros((rows, g.n_nodes))
    for i in order:
        rng = _node_rng(scm.seed, sample_seed, i, NOISE_STREAM, block)
        parents = g.parents(i)
        if not parents:
            # roots are standard normal whatever the noise law
            noise[:, i] = rng.standard_normal(rows)
            values[:, i] = noise[:, i]
            continue
        noise[:, i] = scm.noise.draw(rng, rows)
        values[:, i] = scm.params[g.nodes[i].name].apply(values[:, parents]) + noise[:, i]
    return values, noise


def _sample_with_noise(
    scm: ScmSpec, n: int, sample_seed: int, jobs: int
) -> tuple[np.ndarray, np.ndarray]:
    if n < 1:
        raise ScmError(f"Sample size must be at least 1, got {n}")
    sample_seed = _check_seed(sample_seed, "sample_seed")
    order = topological_indices(scm.graph)
    sizes = [min(BLOCK_ROWS, n - start) for start in range(0, n, BLOCK_ROWS)]

    def run(block: int) -> tuple[np.ndarray, np.ndarray]:
        return _sample_block(scm, order, sample_seed, block, sizes[block])

    if jobs > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(b) for b in range(len(sizes))]

    values = np.concatenate([p[0] for p in parts], axis=0)
    noise = np.concatenate([p[1] for p in parts], axis=0)
    return values, noise


def sample(scm: ScmSpec, n: int, sample_seed: int, jobs: int = 1) -> Dataset:
    """
    Draw n independent joint samples in topological order.

    Rows are generated in blocks of 4096, each block and node on its own
    noise substream, so the output is bit-identical for any ``jobs``.

    Args:
        scm: Realized SCM
        n: Number of rows
        sample_seed: Non-negative seed for the noise streams
        jobs: Worker threads

    Returns:
        Dataset with one column per node, in graph node order
    """
    values, _ = _sample_with_noise(scm, n, sample_seed, jobs)
    logger.info(f"Sampled {n} rows from SCM (seed {scm.seed}, sample_seed {sample_seed})")
    return Dataset(scm.graph.node_names, values)


def draw_noise(scm: ScmSpec, n: int, sample_seed: int) -> np.ndarray:
    """The exogenous draws used by ``sample`` for the same arguments (roots included)."""
    _, noise = _sample_with_noise(scm, n, sample_seed, jobs=1)
    return noise


def random_dag(n_nodes: int, edge_prob: float, seed: int) -> CausalGraph:
    """
    Erdos-Renyi DAG over the upper triangle of a random node permutation.

    Nodes are named X0..X{n-1}.

    Raises:
        ScmError: If edge_prob is outside [0, 1] or n_nodes is negative
    """
    if not 0.0 <= edge_prob <= 1.0:
        raise ScmError(f"edge_prob must be in [0, 1], got {edge_prob}")
    if n_nodes < 0:
        raise ScmError(f"n_nodes must be non-negative, got {n_nodes}")
    rng = _node_rng(_check_seed(seed), DAG_STREAM)
    perm = rng.permutation(n_nodes)
    draws = rng.random((n_nodes, n_nodes))
    edges = [
        (int(perm[i]), int(perm[j]))
        for i in range(n_nodes)
        for j in range(i + 1, n_nodes)
        if draws[i, j] < edge_prob
    ]
    nodes = tuple(Node(f"X{i}") for i in range(n_nodes))
    return CausalGraph(nodes=nodes, directed_edges=frozenset(edges), name=f"random_{seed}")
