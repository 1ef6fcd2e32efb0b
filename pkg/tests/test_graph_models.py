"""Tests for the causal graph model and graph file format."""

import json
from itertools import combinations

import numpy as np
import pytest

from hybrid_pc.graph.exceptions import GraphError, GraphFormatError, UnknownNodeError
from hybrid_pc.graph.io import (
    builtin_graph_names,
    load_graph,
    load_graph_file,
    parse_graph_file,
    save_graph_file,
    serialize_graph_file,
)
from hybrid_pc.graph.models import CausalGraph, GraphFile, Node

from .conftest import graph


class TestNode:
    """Tests for Node."""

    def test_name_is_trimmed(self):
        assert Node("  smoke ").name == "smoke"

    def test_empty_name_rejected(self):
        with pytest.raises(GraphError):
            Node("   ")


class TestCausalGraph:
    """Tests for CausalGraph construction and queries."""

    def test_from_edges(self, chain):
        assert chain.node_names == ("X", "Y", "Z")
        assert chain.directed_edges == frozenset({(0, 1), (1, 2)})
        assert chain.edge_names() == [("X", "Y"), ("Y", "Z")]

    def test_duplicate_names_rejected(self):
        with pytest.raises(GraphError, match="Duplicate"):
            CausalGraph(nodes=(Node("A"), Node("A")))

    def test_self_loop_rejected(self):
        with pytest.raises(GraphError, match="Self-loop"):
            CausalGraph(nodes=(Node("A"), Node("B")), directed_edges=frozenset({(0, 0)}))

    def test_out_of_range_edge_rejected(self):
        with pytest.raises(GraphError):
            CausalGraph(nodes=(Node("A"),), directed_edges=frozenset({(0, 3)}))

    def test_pair_cannot_be_directed_and_undirected(self):
        with pytest.raises(GraphError, match="both directed and undirected"):
            CausalGraph(
                nodes=(Node("A"), Node("B")),
                directed_edges=frozenset({(0, 1)}),
                undirected_edges=frozenset({(1, 0)}),
            )

    def test_undirected_edges_are_normalized(self):
        g = CausalGraph(nodes=(Node("A"), Node("B")), undirected_edges=frozenset({(1, 0)}))
        assert g.undirected_edges == frozenset({(0, 1)})
        assert g.has_undirected(1, 0)
        assert g.is_mixed

    def test_two_cycle_allowed(self):
        g = graph("AB", [("A", "B"), ("B", "A")])
        assert len(g.directed_edges) == 2

    def test_unknown_node_lists_every_name(self, chain):
        with pytest.raises(UnknownNodeError) as exc_info:
            chain.indices(["X", "Q", "R"])
        assert exc_info.value.names == ("Q", "R")

    def test_neighborhoods(self, collider):
        z = collider.index("Z")
        assert collider.parents(z) == [0, 1]
        assert collider.children(0) == [z]
        assert collider.adjacencies(z) == [0, 1]
        assert not collider.adjacent(0, 1)

    def test_skeleton(self, chain):
        assert chain.skeleton() == frozenset({(0, 1), (1, 2)})

    def test_relabeled(self, chain):
        renamed = chain.relabeled({"X": "x"})
        assert renamed.node_names == ("x", "Y", "Z")
        assert renamed.directed_edges == chain.directed_edges

    def test_equality_ignores_index_cache(self, chain):
        assert graph("XYZ", [("X", "Y"), ("Y", "Z")], name="chain") == chain


class TestGraphFile:
    """Tests for the JSON graph file format."""

    def test_parse_with_descriptions_and_forbidden(self):
        text = json.dumps({
            "name": "tiny",
            "nodes": [{"name": "A", "description": "first"}, "B", {"name": "C"}],
            "edges": [["A", "B"]],
            "undirected_edges": [["B", "C"]],
            "forbidden_edges": [["C", "A"]],
        })
        gf = parse_graph_file(text)
        assert gf.graph.name == "tiny"
        assert gf.graph.nodes[0].description == "first"
        assert gf.graph.edge_names() == [("A", "B")]
        assert gf.graph.undirected_names() == [("B", "C")]
        assert gf.forbidden_names() == [("C", "A")]

    def test_round_trip_on_random_graphs(self):
        for seed in range(30):
            rng = np.random.default_rng(seed)
            nodes = tuple(Node(f"V{i}", f"variable {i}" if i % 2 else None) for i in range(6))
            directed, undirected, forbidden = set(), set(), set()
            for a, b in combinations(range(6), 2):
                kind = int(rng.integers(0, 6))
                if kind in (1, 3):
                    directed.add((a, b))
                if kind in (2, 3):
                    directed.add((b, a))
                if kind == 4:
                    undirected.add((a, b))
                if kind == 5:
                    forbidden.add((b, a))
            g = CausalGraph(nodes, frozenset(directed), frozenset(undirected), f"random_{seed}")
            gf = GraphFile(g, forbidden_edges=frozenset(forbidden))
            assert parse_graph_file(serialize_graph_file(gf)) == gf

    def test_round_trip_is_stable(self):
        gf = GraphFile(graph("ABC", [("A", "B")]), forbidden_edges=frozenset({(2, 0)}))
        text = serialize_graph_file(gf)
        assert text.endswith("\n")
        assert serialize_graph_file(parse_graph_file(text)) == text

    @pytest.mark.parametrize("doc, message", [
        ({"nodes": ["A", "A"], "edges": []}, "Duplicate node"),
        ({"nodes": ["A"], "edges": [["A", "B"]]}, "unknown node"),
        ({"nodes": ["A"], "edges": [["A", "A"]]}, "Self-loop"),
        ({"nodes": "A"}, "'nodes' must be a list"),
        ({"nodes": ["A", "B"], "edges": [["A"]]}, "Malformed entry"),
    ])
    def test_invalid_documents(self, doc, message):
        with pytest.raises(GraphFormatError, match=message):
            parse_graph_file(json.dumps(doc))

    def test_invalid_json(self):
        with pytest.raises(GraphFormatError, match="not valid JSON"):
            parse_graph_file("{nodes: ")

    def test_save_and_load(self, tmp_path, chain):
        path = tmp_path / "chain.json"
        save_graph_file(GraphFile(chain), path)
        assert load_graph(path) == chain

    def test_builtins(self):
        assert {"asia", "chain3", "collider3"} <= set(builtin_graph_names())
        asia = load_graph("asia")
        assert asia.n_nodes == 8
        assert len(asia.directed_edges) == 8
        assert asia.nodes[asia.index("tub")].description == "tuberculosis"

    def test_missing_reference(self):
        with pytest.raises(GraphFormatError, match="no builtin graph"):
            load_graph_file("no-such-graph")
