"""Tests for edge metrics, compliance and the method registry."""

import pytest

from hybrid_pc.eval import (
    BenchConfigError,
    EvalError,
    MethodContext,
    edge_metrics,
    f1_score,
    get_method,
    get_supported_methods,
    negative_compliance,
)
from hybrid_pc.graph.algorithms import cpdag_of
from hybrid_pc.graph.exceptions import NodeSetMismatchError
from hybrid_pc.graph.io import load_graph
from hybrid_pc.pc import PriorKnowledge

from .conftest import graph


class TestScores:
    """Tests for f1_score and EvalReport."""

    @pytest.mark.parametrize("precision, recall, expected", [
        (0.64, 0.80, 0.71),
        (0.90, 0.45, 0.60),
        (1.0, 1.0, 1.0),
        (0.0, 0.0, 0.0),
    ])
    def test_f1(self, precision, recall, expected):
        assert round(f1_score(precision, recall), 2) == expected

    def test_empty_graphs_score_zero(self):
        report = edge_metrics(graph("AB"), graph("AB"))
        assert (report.tp, report.fp, report.fn) == (0, 0, 0)
        assert report.precision == report.recall == report.f1 == 0.0


class TestEdgeMetrics:
    """Tests for edge_metrics."""

    def test_reversed_edge(self, chain):
        pred = graph("XYZ", [("X", "Y"), ("Z", "Y")])
        strict = edge_metrics(pred, chain)
        assert (strict.tp, strict.fp, strict.fn) == (1, 1, 1)
        assert strict.precision == strict.recall == 0.5
        assert strict.matching_mode == "directed_strict"

        skeleton = edge_metrics(pred, chain, "skeleton")
        assert skeleton.f1 == 1.0

    def test_undirected_prediction(self, chain):
        pred = graph("XYZ", [("X", "Y")], undirected=[("Y", "Z")])
        assert edge_metrics(pred, chain).tp == 1
        assert edge_metrics(pred, chain, "cpdag_aware").f1 == 1.0
        assert edge_metrics(pred, chain, "skeleton").f1 == 1.0

    def test_cpdag_truth(self, chain):
        truth = cpdag_of(chain)
        pred = graph("XYZ", [("Y", "X"), ("Y", "Z")])
        assert edge_metrics(pred, truth, "cpdag_aware").f1 == 1.0
        assert edge_metrics(pred, truth).tp == 0

    def test_extra_and_missing_edges(self, diamond):
        pred = graph("ABCD", [("A", "B"), ("A", "D")])
        report = edge_metrics(pred, diamond)
        assert (report.tp, report.fp, report.fn) == (1, 1, 3)
        assert report.recall == 0.25

    def test_node_order_does_not_matter(self, chain):
        pred = graph("ZYX", [("X", "Y"), ("Y", "Z")])
        assert edge_metrics(pred, chain).f1 == 1.0

    def test_node_set_mismatch(self, chain):
        with pytest.raises(NodeSetMismatchError) as exc_info:
            edge_metrics(graph("XYQ"), chain)
        assert exc_info.value.missing == ("Z",)
        assert exc_info.value.extra == ("Q",)

    def test_unknown_mode(self, chain):
        with pytest.raises(EvalError, match="Unknown matching mode"):
            edge_metrics(chain, chain, "fuzzy")

    def test_to_dict(self, chain):
        assert edge_metrics(chain, chain).to_dict() == {
            "matching_mode": "directed_strict",
            "tp": 2,
            "fp": 0,
            "fn": 0,
            "precision": 1.0,
            "recall": 1.0,
            "f1": 1.0,
        }


class TestNegativeCompliance:
    """Tests for negative_compliance."""

    def test_violations(self):
        pred = graph("XYZ", [("X", "Y")], undirected=[("Y", "Z")])
        report = negative_compliance(pred, [("Y", "X"), ("Z", "Y"), ("X", "Z"), ("Q", "X")])
        assert report.n_forbidden == 4
        assert report.n_violated == 1
        assert report.violations == (("Z", "Y"),)

    def test_directed_violation(self, chain):
        report = negative_compliance(chain, [(" X ", "Y")])
        assert report.to_dict() == {
            "n_forbidden": 1,
            "n_violated": 1,
            "violations": [["X", "Y"]],
        }


class TestMethods:
    """Tests for the method registry."""

    def context(self, truth, **kwargs):
        defaults = dict(truth=truth, data=None, prior=PriorKnowledge(), prior_graph=None,
                        alpha=0.05, seed=0)
        defaults.update(kwargs)
        return MethodContext(**defaults)

    def test_supported(self):
        assert get_supported_methods() == [
            "oracle", "pc", "pc+prior", "pc-kci", "pc-kci+prior", "prior"
        ]

    def test_unknown(self):
        with pytest.raises(BenchConfigError, match="Unknown method 'ges'"):
            get_method("ges")

    def test_oracle(self):
        truth = load_graph("asia")
        pred = get_method("oracle")(self.context(truth))
        assert edge_metrics(pred, cpdag_of(truth)).f1 == 1.0

    def test_prior_method_uses_truth_node_order(self, chain):
        prior_graph = graph("ZYX", [("X", "Y")])
        pred = get_method("prior")(self.context(chain, prior_graph=prior_graph))
        assert pred.node_names == ("X", "Y", "Z")
        assert pred.edge_names() == [("X", "Y")]

    def test_missing_inputs(self, chain):
        with pytest.raises(BenchConfigError, match="needs a dataset"):
            get_method("pc")(self.context(chain))
        with pytest.raises(BenchConfigError, match="needs a prior"):
            get_method("pc+prior")(self.context(chain))
        with pytest.raises(BenchConfigError, match="needs a prior graph"):
            get_method("prior")(self.context(chain))

    def test_pc_with_prior(self, chain, chain_data):
        prior = PriorKnowledge(required=frozenset({("X", "Y")}))
        pred = get_method("pc+prior")(self.context(chain, data=chain_data, prior=prior))
        assert ("X", "Y") in pred.edge_names()
