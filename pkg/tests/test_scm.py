"""Tests for SCM construction, sampling and random DAGs."""

import networkx as nx
import numpy as np
import pytest

from hybrid_pc.graph.algorithms import is_dag
from hybrid_pc.graph.exceptions import CycleError
from hybrid_pc.scm import (
    Distribution,
    LinearParams,
    MechanismSpec,
    MlpParams,
    NoiseSpec,
    ScmError,
    build_scm,
    draw_noise,
    random_dag,
    sample,
)

from .conftest import graph


class TestDescriptors:
    """Tests for distribution and noise descriptors."""

    def test_parse_uniform(self):
        assert Distribution.parse("uniform(0.5, 2)") == Distribution("uniform", 0.5, 2.0)

    def test_parse_xavier(self):
        assert Distribution.parse("xavier_normal").kind == "xavier_normal"

    @pytest.mark.parametrize("text", ["uniform(2,1)", "normal(0,0)", "beta(1,2)", "uniform", "%"])
    def test_invalid_distribution(self, text):
        with pytest.raises(ScmError):
            Distribution.parse(text)

    def test_noise_aliases(self):
        assert NoiseSpec.parse("normal(0, 2)") == NoiseSpec("gaussian", 0.0, 2.0)
        assert str(NoiseSpec.parse("uniform(-1,1)")) == "uniform(-1,1)"

    def test_mlp_validation(self):
        with pytest.raises(ScmError, match="depth"):
            MechanismSpec(kind="mlp", depth=1)
        with pytest.raises(ScmError, match="activation"):
            MechanismSpec(kind="mlp", activation="gelu")


class TestBuildScm:
    """Tests for build_scm."""

    def test_roots_have_no_mechanism(self, collider):
        scm = build_scm(collider, MechanismSpec(), NoiseSpec(), seed=0)
        assert set(scm.params) == {"Z"}
        assert scm.params["Z"].weights.shape == (2,)

    def test_linear_coefficients_in_range(self, diamond):
        scm = build_scm(diamond, MechanismSpec(), NoiseSpec(), seed=5)
        for params in scm.params.values():
            assert np.all((params.weights >= 0.0) & (params.weights < 2.0))

    def test_mlp_shapes(self, collider):
        mech = MechanismSpec(kind="mlp", depth=3, width=4)
        scm = build_scm(collider, mech, NoiseSpec(), seed=0)
        assert scm.params["Z"].shapes == [(2, 4), (4, 4), (4, 1)]

    def test_adding_a_node_keeps_existing_parameters(self, chain):
        small = build_scm(graph("XY", [("X", "Y")]), MechanismSpec(), NoiseSpec(), seed=9)
        large = build_scm(chain, MechanismSpec(), NoiseSpec(), seed=9)
        assert np.array_equal(small.params["Y"].weights, large.params["Y"].weights)

    def test_cycle_rejected(self):
        with pytest.raises(CycleError):
            build_scm(graph("AB", [("A", "B"), ("B", "A")]), MechanismSpec(), NoiseSpec(), 0)

    def test_negative_seed_rejected(self, chain):
        with pytest.raises(ScmError, match="non-negative"):
            build_scm(chain, MechanismSpec(), NoiseSpec(), seed=-1)

    def test_with_params_rejects_root(self, chain):
        scm = build_scm(chain, MechanismSpec(), NoiseSpec(), seed=0)
        with pytest.raises(ScmError):
            scm.with_params("X", LinearParams(np.ones(1)))


class TestSample:
    """Tests for sampling."""

    def test_identical_for_any_job_count(self, diamond):
        scm = build_scm(diamond, MechanismSpec(kind="mlp"), NoiseSpec(), seed=2)
        serial = sample(scm, 10000, sample_seed=4, jobs=1)
        parallel = sample(scm, 10000, sample_seed=4, jobs=4)
        assert np.array_equal(serial.values, parallel.values)
        assert serial.columns == ("A", "B", "C", "D")

    def test_sample_seed_changes_data(self, chain):
        scm = build_scm(chain, MechanismSpec(), NoiseSpec(), seed=0)
        assert not np.array_equal(sample(scm, 50, 0).values, sample(scm, 50, 1).values)

    def test_residual_is_noise(self, chain):
        scm = build_scm(chain, MechanismSpec(), NoiseSpec("uniform", -1.0, 1.0), seed=3)
        data = sample(scm, 500, sample_seed=8)
        noise = draw_noise(scm, 500, sample_seed=8)
        w = scm.params["Y"].weights[0]
        assert np.allclose(data.column("Y") - w * data.column("X"), noise[:, 1])
        assert np.array_equal(data.column("X"), noise[:, 0])
        assert np.all(np.abs(noise[:, 1:]) <= 1.0)

    @pytest.mark.slow
    def test_unit_chain_variance(self, chain):
        scm = build_scm(chain, MechanismSpec(), NoiseSpec(), seed=0)
        scm = scm.with_params("Y", LinearParams(np.ones(1)))
        data = sample(scm, 20000, sample_seed=0)
        assert np.var(data.column("Y")) == pytest.approx(2.0, abs=0.1)

    def test_invalid_size(self, chain):
        scm = build_scm(chain, MechanismSpec(), NoiseSpec(), seed=0)
        with pytest.raises(ScmError):
            sample(scm, 0, sample_seed=0)

    def test_intervention_changes_only_descendants(self):
        truth = random_dag(8, 0.4, 1)
        scm = build_scm(truth, MechanismSpec(), NoiseSpec(), seed=1)
        before = sample(scm, 300, sample_seed=2)
        dg = truth.to_networkx()
        for target in scm.params:
            i = truth.index(target)
            weights = np.full(len(truth.parents(i)), 7.0)
            after = sample(scm.with_params(target, LinearParams(weights)), 300, sample_seed=2)
            affected = {i} | nx.descendants(dg, i)
            for j, name in enumerate(truth.node_names):
                if j not in affected:
                    assert np.array_equal(before.column(name), after.column(name))
            assert not np.array_equal(before.column(target), after.column(target))

    def test_zero_weight_mlp_is_its_noise(self, collider):
        scm = build_scm(collider, MechanismSpec(kind="mlp"), NoiseSpec(), seed=0)
        params = scm.params["Z"]
        zeroed = MlpParams(
            weights=tuple(np.zeros_like(w) for w in params.weights),
            biases=params.biases,
            activation=params.activation,
        )
        scm = scm.with_params("Z", zeroed)
        data = sample(scm, 200, sample_seed=3)
        noise = draw_noise(scm, 200, sample_seed=3)
        assert np.array_equal(data.column("Z"), noise[:, 2])


class TestRandomDag:
    """Tests for random_dag."""

    def test_deterministic(self):
        assert random_dag(8, 0.3, seed=4) == random_dag(8, 0.3, seed=4)

    def test_always_acyclic(self):
        for seed in range(10):
            assert is_dag(random_dag(10, 0.5, seed))

    def test_extreme_probabilities(self):
        assert random_dag(6, 0.0, 0).directed_edges == frozenset()
        assert len(random_dag(6, 1.0, 0).directed_edges) == 15

    def test_names(self):
        assert random_dag(3, 0.5, 0).node_names == ("X0", "X1", "X2")

    def test_mean_edge_count(self):
        counts = [len(random_dag(10, 0.3, seed).directed_edges) for seed in range(1000)]
        assert np.mean(counts) == pytest.approx(13.5, abs=1.0)

    def test_invalid_probability(self):
        with pytest.raises(ScmError):
            random_dag(4, 1.5, 0)
