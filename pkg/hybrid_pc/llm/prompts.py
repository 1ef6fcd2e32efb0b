"""Prompt rendering from the versioned text templates in ``templates/``."""

from collections.abc import Sequence
from functools import cache
from importlib import resources
from string import Template

from hybrid_pc.graph.models import Node

NO_DESCRIPTION = "no description available"


@cache
def load_template(name: str) -> Template:
    """Load ``templates/<name>.txt`` exactly as stored."""
    text = (resources.files("hybrid_pc.llm") / "templates" / f"{name}.txt").read_text(
        encoding="utf-8"
    )
    return Template(text)


def format_list(items: Sequence[str]) -> str:
    """Python list literal of quoted names, e.g. ['tub', 'smoke']."""
    return repr([str(i) for i in items])


def format_edges(edges: Sequence[tuple[str, str]]) -> str:
    """Nested list literal of edges, e.g. [['asia', 'tub']]."""
    return repr([[str(a), str(b)] for a, b in edges])


def format_variables(variables: Sequence[Node]) -> str:
    return "\n".join(
        f"- {v.name}: {v.description}" if v.description else f"- {v.name}" for v in variables
    )


def render_m1(dataset_name: str, given_nodes: Sequence[str]) -> str:
    return load_template("m1").substitute(
        dataset_name=dataset_name, given_nodes=format_list(given_nodes)
    )


def render_m2(
    dataset_name: str,
    all_nodes: Sequence[str],
    given_edges: Sequence[tuple[str, str]],
) -> str:
    return load_template("m2").substitute(
        dataset_name=dataset_name,
        all_nodes=format_list(all_nodes),
        given_edges=format_edges(given_edges),
    )


def render_m3(
    dataset_name: str,
    given_nodes: Sequence[str],
    given_edges: Sequence[tuple[str, str]],
) -> str:
    return load_template("m3").substitute(
        dataset_name=dataset_name,
        given_nodes=format_list(given_nodes),
        given_edges=format_edges(given_edges),
    )


def render_guided_edges(dataset_name: str, all_nodes: Sequence[str]) -> str:
    return load_template("guided_edges").substitute(
        dataset_name=dataset_name, all_nodes=format_list(all_nodes)
    )


def render_unguided_edges(all_nodes: Sequence[str]) -> str:
    return load_template("unguided_edges").substitute(all_nodes=format_list(all_nodes))


def render_full_graph(dataset_name: str) -> str:
    return load_template("full_graph").substitute(dataset_name=dataset_name)


def render_dataset_name(
    all_nodes: Sequence[str],
    all_edges: Sequence[tuple[str, str]],
) -> str:
    return load_template("dataset_name").substitute(
        all_nodes=format_list(all_nodes), all_edges=format_edges(all_edges)
    )


def render_graph_completion(dataset_name: str, given_nodes: Sequence[str]) -> str:
    return load_template("graph_completion").substitute(
        dataset_name=dataset_name, given_nodes=format_list(given_nodes)
    )


def render_recognition(dataset_name: str) -> str:
    return load_template("recognition").substitute(dataset_name=dataset_name)


def render_pairwise(a: Node, b: Node) -> str:
    return load_template("pairwise").substitute(
        name_a=a.name,
        description_a=a.description or NO_DESCRIPTION,
        name_b=b.name,
        description_b=b.description or NO_DESCRIPTION,
    )


def render_bfs_roots(variables: Sequence[Node]) -> str:
    return load_template("bfs_roots").substitute(variables=format_variables(variables))


def render_bfs_effects(variables: Sequence[Node], node: Node, remaining: Sequence[str]) -> str:
    return load_template("bfs_effects").substitute(
        variables=format_variables(variables),
        node=node.name,
        remaining=format_list(remaining),
    )
