"""Strict parsing of bracketed-list responses."""

import ast
from dataclasses import dataclass
from typing import Any

from .exceptions import PriorError, ResponseParseError

_CLOSERS = {"[": "]", "{": "}"}

NODE_LIST_KINDS = ("M1", "graph_completion", "dataset_name")
EDGE_LIST_KINDS = ("M2", "guided_edges", "unguided_edges")
GRAPH_KEYS = {
    "M3": ("remaining_nodes", "remaining_edges"),
    "full_graph": ("nodes", "edges"),
}


def extract_bracketed(text: str, opener: str = "[") -> str:
    """
    Return the first well-bracketed span starting at the first ``opener``.

    Quoted strings are skipped while matching brackets, so names that
    contain brackets do not end the span early.

    Raises:
        ResponseParseError: If there is no opener or the span never closes
    """
    start = text.find(opener)
    if start < 0:
        raise ResponseParseError(f"No '{opener}' found in response")

    stack: list[str] = []
    quote: str | None = None
    escaped = False
    for i in range(start, len(text)):
        ch = text[i]
        if quote is not None:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == quote:
                quote = None
            continue
        if ch in ("'", '"'):
            quote = ch
        elif ch in _CLOSERS:
            stack.append(_CLOSERS[ch])
        elif ch in ("]", "}"):
            if not stack or stack.pop() != ch:
                raise ResponseParseError("Mismatched brackets in response")
            if not stack:
                return text[start:i + 1]
    raise ResponseParseError("Unterminated list in response")


def _literal(span: str) -> Any:
    try:
        return ast.literal_eval(span)
    except (ValueError, SyntaxError, MemoryError, RecursionError) as e:
        raise ResponseParseError(f"Not a literal list: {e}") from e


def _names(value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ResponseParseError(f"{what} must be a list of quoted names")
    names = [v.strip() for v in value]
    if any(not n for n in names):
        raise ResponseParseError(f"{what} contains an empty name")
    return names


def _edges(value: Any, what: str) -> list[tuple[str, str]]:
    if not isinstance(value, list):
        raise ResponseParseError(f"{what} must be a list of [src, dst] pairs")
    edges = []
    for item in value:
        pair = _names(item, what)
        if len(pair) != 2:
            raise ResponseParseError(f"{what} entry {item!r} is not a pair")
        edges.append((pair[0], pair[1]))
    return edges


def parse_node_list(text: str) -> list[str]:
    """Parse ['a', 'b', ...] from a response."""
    return _names(_literal(extract_bracketed(text, "[")), "Node list")


def parse_edge_list(text: str) -> list[tuple[str, str]]:
    """Parse [['a', 'b'], ...] from a response."""
    return _edges(_literal(extract_bracketed(text, "[")), "Edge list")


def parse_nodes_and_edges(
    text: str,
    keys: tuple[str, str] = ("remaining_nodes", "remaining_edges"),
) -> tuple[list[str], list[tuple[str, str]]]:
    """
    Parse {'remaining_nodes': [...], 'remaining_edges': [[...], ...]} from a response.

    ``keys`` names the node and edge entries; the dict must hold exactly those two.
    """
    node_key, edge_key = keys
    value = _literal(extract_bracketed(text, "{"))
    if not isinstance(value, dict) or set(value) != {node_key, edge_key}:
        raise ResponseParseError(
            f"Expected exactly the keys '{node_key}' and '{edge_key}'"
        )
    return (
        _names(value[node_key], node_key),
        _edges(value[edge_key], edge_key),
    )


def parse_choice(text: str, options: tuple[str, ...]) -> str:
    """Parse a one-element list such as ['A'] whose item is one of ``options``."""
    names = parse_node_list(text)
    if len(names) != 1 or names[0].upper() not in options:
        raise ResponseParseError(f"Expected one of {list(options)} in a one-element list")
    return names[0].upper()


@dataclass(frozen=True)
class PriorResponse:
    """A raw response with its parsed node/edge lists and parse status."""

    raw: str
    nodes: tuple[str, ...] | None = None
    edges: tuple[tuple[str, str], ...] | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @classmethod
    def parse(cls, raw: str, kind: str) -> "PriorResponse":
        """
        Parse a response for a memorization task kind.

        Node-list kinds (M1, graph_completion, dataset_name) fill ``nodes``,
        edge-list kinds (M2, guided_edges, unguided_edges) fill ``edges``,
        M3 and full_graph fill both from a two-key dict. Parse failures are
        kept as an error message, never a partial result.
        """
        try:
            if kind in NODE_LIST_KINDS:
                return cls(raw, nodes=tuple(parse_node_list(raw)))
            if kind in EDGE_LIST_KINDS:
                return cls(raw, edges=tuple(parse_edge_list(raw)))
            if kind in GRAPH_KEYS:
                nodes, edges = parse_nodes_and_edges(raw, GRAPH_KEYS[kind])
                return cls(raw, nodes=tuple(nodes), edges=tuple(edges))
        except ResponseParseError as e:
            return cls(raw, error=e.message)
        raise PriorError(f"Unknown task kind: {kind}")
