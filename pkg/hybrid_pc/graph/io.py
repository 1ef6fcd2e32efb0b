"""Reading and writing the graph file format.

A graph file is a JSON document::

    {
      "name": "asia",
      "nodes": [{"name": "asia", "description": "visit to Asia"}, ...],
      "edges": [["asia", "tub"], ...],
      "undirected_edges": [["either", "xray"]],
      "forbidden_edges": [["xray", "asia"]]
    }

``undirected_edges`` and ``forbidden_edges`` are optional. Prior files use
the same layout: ``edges`` are required edges and ``forbidden_edges`` are
forbidden ones.
"""

import json
import logging
from importlib import resources
from pathlib import Path
from typing import Any

from .exceptions import GraphFormatError
from .models import CausalGraph, GraphFile, Node

logger = logging.getLogger(__name__)

BUILTIN_SUFFIX = ".json"


def _pairs(raw: Any, field_name: str) -> list[tuple[str, str]]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise GraphFormatError(f"'{field_name}' must be a list of [src, dst] pairs")
    pairs = []
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, str) for v in item)
        ):
            raise GraphFormatError(f"Malformed entry in '{field_name}': {item!r}")
        pairs.append((item[0].strip(), item[1].strip()))
    return pairs


def graph_file_from_dict(data: dict[str, Any]) -> GraphFile:
    """
    Build a GraphFile from a decoded JSON document.

    Raises:
        GraphFormatError: On duplicate nodes, unknown endpoints, self-loops or
            malformed fields
    """
    if not isinstance(data, dict):
        raise GraphFormatError("Graph document must be a JSON object")

    raw_nodes = data.get("nodes")
    if not isinstance(raw_nodes, list):
        raise GraphFormatError("'nodes' must be a list")

    nodes: list[Node] = []
    seen: set[str] = set()
    for raw in raw_nodes:
        if isinstance(raw, str):
            raw = {"name": raw}
        if not isinstance(raw, dict) or not isinstance(raw.get("name"), str):
            raise GraphFormatError(f"Malformed node entry: {raw!r}")
        description = raw.get("description")
        if description is not None and not isinstance(description, str):
            raise GraphFormatError(f"Description of node {raw['name']!r} must be a string")
        name = raw["name"].strip()
        if not name:
            raise GraphFormatError("Node names must be non-empty")
        if name in seen:
            raise GraphFormatError(f"Duplicate node: {name}")
        seen.add(name)
        nodes.append(Node(name, description))

    edges = _pairs(data.get("edges", []), "edges")
    undirected = _pairs(data.get("undirected_edges"), "undirected_edges")
    forbidden = _pairs(data.get("forbidden_edges"), "forbidden_edges")

    for field_name, pairs in (
        ("edges", edges),
        ("undirected_edges", undirected),
        ("forbidden_edges", forbidden),
    ):
        for src, dst in pairs:
            unknown = [v for v in (src, dst) if v not in seen]
            if unknown:
                raise GraphFormatError(
                    f"'{field_name}' entry [{src}, {dst}] references unknown node(s) {unknown}"
                )
            if src == dst:
                raise GraphFormatError(f"Self-loop on {src} in '{field_name}'")

    name = data.get("name", "")
    if not isinstance(name, str):
        raise GraphFormatError("'name' must be a string")

    try:
        graph = CausalGraph.from_edges(nodes, edges, undirected, name=name)
    except GraphFormatError:
        raise
    except Exception as e:
        raise GraphFormatError(str(e)) from e

    forbidden_idx = frozenset(graph.edge_index(a, b) for a, b in forbidden)
    return GraphFile(graph=graph, forbidden_edges=forbidden_idx)


def graph_file_to_dict(gf: GraphFile) -> dict[str, Any]:
    """Encode a GraphFile; edges are listed in node-index order."""
    g = gf.graph
    nodes: list[dict[str, str]] = []
    for node in g.nodes:
        entry = {"name": node.name}
        if node.description is not None:
            entry["description"] = node.description
        nodes.append(entry)

    data: dict[str, Any] = {
        "name": g.name,
        "nodes": nodes,
        "edges": [list(e) for e in g.edge_names()],
    }
    if g.undirected_edges:
        data["undirected_edges"] = [list(e) for e in g.undirected_names()]
    if gf.forbidden_edges:
        data["forbidden_edges"] = [list(e) for e in gf.forbidden_names()]
    return data


def parse_graph_file(text: str) -> GraphFile:
    """Parse graph file text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"Graph file is not valid JSON: {e}") from e
    return graph_file_from_dict(data)


def serialize_graph_file(gf: GraphFile) -> str:
    """Serialize a GraphFile to canonical text (trailing newline included)."""
    return json.dumps(graph_file_to_dict(gf), indent=2, ensure_ascii=False) + "\n"


def parse_graph(text: str) -> CausalGraph:
    return parse_graph_file(text).graph


def serialize_graph(g: CausalGraph) -> str:
    return serialize_graph_file(GraphFile(g))


def builtin_graph_names() -> list[str]:
    """Names of graph files shipped with the package."""
    root = resources.files("hybrid_pc.graph") / "builtin"
    return sorted(
        p.name[: -len(BUILTIN_SUFFIX)] for p in root.iterdir() if p.name.endswith(BUILTIN_SUFFIX)
    )


def load_graph_file(ref: str | Path) -> GraphFile:
    """
    Load a graph file by path or by builtin name (e.g. ``asia``).

    Raises:
        GraphFormatError: If the file is missing or malformed
    """
    path = Path(ref)
    if path.is_file():
        logger.debug(f"Loading graph file {path}")
        return parse_graph_file(path.read_text(encoding="utf-8"))

    builtin = resources.files("hybrid_pc.graph") / "builtin" / f"{ref}{BUILTIN_SUFFIX}"
    if builtin.is_file():
        logger.debug(f"Loading builtin graph {ref}")
        return parse_graph_file(builtin.read_text(encoding="utf-8"))

    raise GraphFormatError(
        f"No graph file at '{ref}' and no builtin graph of that name "
        f"(builtins: {', '.join(builtin_graph_names())})"
    )


def load_graph(ref: str | Path) -> CausalGraph:
    return load_graph_file(ref).graph


def save_graph_file(gf: GraphFile, path: str | Path) -> None:
    Path(path).write_text(serialize_graph_file(gf), encoding="utf-8")


def save_graph(g: CausalGraph, path: str | Path) -> None:
    save_graph_file(GraphFile(g), path)
