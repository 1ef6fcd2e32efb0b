"""Tests for response parsing."""

import pytest

from hybrid_pc.llm import PriorError, PriorResponse, ResponseParseError
from hybrid_pc.llm.parsing import (
    extract_bracketed,
    parse_choice,
    parse_edge_list,
    parse_node_list,
    parse_nodes_and_edges,
)


class TestExtractBracketed:
    """Tests for extract_bracketed."""

    def test_skips_surrounding_text(self):
        assert extract_bracketed("Sure! ['a', 'b'] hope this helps") == "['a', 'b']"

    def test_nested(self):
        assert extract_bracketed("x [['a', 'b'], ['c', 'd']] y") == "[['a', 'b'], ['c', 'd']]"

    def test_brackets_inside_quotes(self):
        assert extract_bracketed("['a]b', 'c']") == "['a]b', 'c']"

    def test_dict(self):
        text = "{'remaining_nodes': [], 'remaining_edges': []}"
        assert extract_bracketed("out: " + text, "{") == text

    @pytest.mark.parametrize("text, message", [
        ("no list here", "No '\\[' found"),
        ("['a', 'b'", "Unterminated"),
        ("[['a', 'b']}", "Mismatched"),
    ])
    def test_errors(self, text, message):
        with pytest.raises(ResponseParseError, match=message):
            extract_bracketed(text)


class TestParsers:
    """Tests for node, edge and choice parsers."""

    def test_node_list_strips_names(self):
        assert parse_node_list("['  tub ', \"lung\"]") == ["tub", "lung"]

    def test_empty_node_list(self):
        assert parse_node_list("[]") == []

    @pytest.mark.parametrize("text", ["[1, 2]", "['a', '']", "[a, b]", "['a', ['b']]"])
    def test_invalid_node_lists(self, text):
        with pytest.raises(ResponseParseError):
            parse_node_list(text)

    def test_edge_list(self):
        assert parse_edge_list("[['asia', 'tub'], ['tub', 'either']]") == [
            ("asia", "tub"),
            ("tub", "either"),
        ]

    @pytest.mark.parametrize("text", ["['asia', 'tub']", "[['a', 'b', 'c']]", "[['a']]"])
    def test_invalid_edge_lists(self, text):
        with pytest.raises(ResponseParseError):
            parse_edge_list(text)

    def test_nodes_and_edges(self):
        text = "{'remaining_nodes': ['lung'], 'remaining_edges': [['smoke', 'lung']]}"
        assert parse_nodes_and_edges(text) == (["lung"], [("smoke", "lung")])

    def test_nodes_and_edges_requires_exact_keys(self):
        with pytest.raises(ResponseParseError, match="exactly the keys"):
            parse_nodes_and_edges("{'remaining_nodes': []}")

    def test_choice(self):
        assert parse_choice("Answer: ['b']", ("A", "B", "C")) == "B"
        with pytest.raises(ResponseParseError):
            parse_choice("['A', 'B']", ("A", "B", "C"))
        with pytest.raises(ResponseParseError):
            parse_choice("['D']", ("A", "B", "C"))


class TestPriorResponse:
    """Tests for PriorResponse.parse."""

    def test_m1(self):
        response = PriorResponse.parse("['lung', 'xray']", "M1")
        assert response.ok
        assert response.nodes == ("lung", "xray")
        assert response.edges is None

    def test_m3(self):
        raw = "{'remaining_nodes': ['lung'], 'remaining_edges': [['smoke', 'lung']]}"
        response = PriorResponse.parse(raw, "M3")
        assert response.nodes == ("lung",)
        assert response.edges == (("smoke", "lung"),)

    def test_full_graph_keys(self):
        raw = "{'nodes': ['smoke', 'lung'], 'edges': [['smoke', 'lung']]}"
        response = PriorResponse.parse(raw, "full_graph")
        assert response.nodes == ("smoke", "lung")
        assert response.edges == (("smoke", "lung"),)

    @pytest.mark.parametrize("kind", ["guided_edges", "unguided_edges"])
    def test_edge_list_kinds(self, kind):
        response = PriorResponse.parse("[['smoke', 'lung']]", kind)
        assert response.edges == (("smoke", "lung"),)
        assert response.nodes is None

    @pytest.mark.parametrize("kind", ["graph_completion", "dataset_name"])
    def test_node_list_kinds(self, kind):
        assert PriorResponse.parse("['asia']", kind).nodes == ("asia",)

    def test_failure_keeps_no_partial_result(self):
        response = PriorResponse.parse("I cannot answer that.", "M2")
        assert not response.ok
        assert response.edges is None
        assert "No '[' found" in response.error

    def test_unknown_kind(self):
        with pytest.raises(PriorError, match="Unknown task kind"):
            PriorResponse.parse("[]", "M4")
