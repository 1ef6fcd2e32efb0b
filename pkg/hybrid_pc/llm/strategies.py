"""Prior graph construction by querying a language model about the variables."""

import logging
import threading
from collections import deque
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import TypeVar

from hybrid_pc.graph.models import CausalGraph, Node

from .client import Completer
from .exceptions import CacheMissError, LlmAPIError, LlmAuthError, PriorError, ResponseParseError
from .parsing import parse_choice, parse_node_list
from .prompts import render_bfs_effects, render_bfs_roots, render_pairwise

logger = logging.getLogger(__name__)

PAIRWISE_CHOICES = ("A", "B", "C")

T = TypeVar("T")


@dataclass
class StrategyReport:
    """Request count and per-query failures of one prior construction run."""

    requests: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def count_request(self) -> None:
        with self._lock:
            self.requests += 1

    def add_failure(self, subject: str, error: str) -> None:
        with self._lock:
            self.failures.append((subject, error))

    def to_dict(self) -> dict[str, object]:
        return {
            "requests": self.requests,
            "failures": [{"query": s, "error": e} for s, e in sorted(self.failures)],
        }


def _ask(
    client: Completer,
    prompt: str,
    parse: Callable[[str], T],
    attempts: int,
    subject: str,
    report: StrategyReport,
    budget: Callable[[], bool] | None = None,
) -> T | None:
    """
    Send a prompt up to ``attempts`` times until the answer parses.

    Authentication failures and offline cache misses abort the whole run;
    other transport and parse failures are recorded and the query is given up.
    """
    last_error = ""
    for attempt in range(attempts):
        if budget is not None and not budget():
            last_error = "prompt budget exhausted"
            break
        report.count_request()
        try:
            return parse(client.complete(prompt))
        except (LlmAuthError, CacheMissError):
            raise
        except (LlmAPIError, ResponseParseError) as e:
            last_error = e.message
            logger.warning(f"Query {subject} failed (attempt {attempt + 1}/{attempts}): {e}")
    report.add_failure(subject, last_error)
    return None


def _check_variables(variables: Sequence[Node], minimum: int) -> tuple[Node, ...]:
    nodes = tuple(v if isinstance(v, Node) else Node(str(v)) for v in variables)
    if len(nodes) < minimum:
        raise PriorError(f"At least {minimum} variable(s) required, got {len(nodes)}")
    names = [n.name for n in nodes]
    if len(set(names)) != len(names):
        raise PriorError("Variable names must be unique")
    return nodes


def pairwise_prior(
    variables: Sequence[Node],
    client: Completer,
    retries: int = 1,
    jobs: int = 1,
    name: str = "",
    report: StrategyReport | None = None,
) -> CausalGraph:
    """
    Ask one directional question per unordered pair of variables.

    Args:
        variables: Variables with optional descriptions, in graph order
        client: Completion source (live, cached or stub)
        retries: Extra attempts per pair after a failed or unparsable answer
        jobs: Pairs queried concurrently
        name: Name of the returned graph
        report: Optional report receiving request counts and failures

    Returns:
        Directed graph; pairs that never produced an answer get no edge
    """
    nodes = _check_variables(variables, 2)
    report = report if report is not None else StrategyReport()
    pairs = list(combinations(range(len(nodes)), 2))

    def query(pair: tuple[int, int]) -> tuple[int, int] | None:
        a, b = nodes[pair[0]], nodes[pair[1]]
        choice = _ask(
            client,
            render_pairwise(a, b),
            lambda text: parse_choice(text, PAIRWISE_CHOICES),
            1 + retries,
            f"{a.name} / {b.name}",
            report,
        )
        if choice == "A":
            return pair
        if choice == "B":
            return pair[1], pair[0]
        return None

    if jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            answers = list(pool.map(query, pairs))
    else:
        answers = [query(p) for p in pairs]

    edges = {e for e in answers if e is not None}
    logger.info(
        f"Pairwise prior: {len(edges)} edges from {len(pairs)} pairs "
        f"({report.requests} requests, {len(report.failures)} failures)"
    )
    return CausalGraph(nodes, directed_edges=frozenset(edges), name=name)


def bfs_prior(
    variables: Sequence[Node],
    client: Completer,
    retries: int = 1,
    name: str = "",
    report: StrategyReport | None = None,
) -> CausalGraph:
    """
    Build a graph breadth-first from the variables the model names as root causes.

    One prompt seeds the frontier; each visited variable X then gets one
    prompt asking which of the remaining variables (all except X and the
    parents already assigned to X) X directly causes. Variables are
    visited at most once and every prompt, retries included, draws from a
    budget of 2n+1. Answers may form cycles; acyclicity is left to refine.

    Args:
        variables: Variables with optional descriptions, in graph order
        client: Completion source
        retries: Extra attempts per prompt after a failed or unparsable answer
        name: Name of the returned graph
        report: Optional report receiving request counts and failures

    Returns:
        Directed graph over the given variables
    """
    nodes = _check_variables(variables, 1)
    report = report if report is not None else StrategyReport()
    index = {n.name.casefold(): i for i, n in enumerate(nodes)}
    remaining_budget = [2 * len(nodes) + 1]

    def spend() -> bool:
        if remaining_budget[0] <= 0:
            return False
        remaining_budget[0] -= 1
        return True

    def resolve(answer: list[str], allowed: set[int], subject: str) -> list[int]:
        resolved: list[int] = []
        for item in answer:
            i = index.get(item.casefold())
            if i is None or i not in allowed:
                logger.warning(f"Ignoring {item!r} in answer to {subject}")
            elif i not in resolved:
                resolved.append(i)
        return resolved

    roots = _ask(
        client, render_bfs_roots(nodes), parse_node_list, 1 + retries, "roots", report, spend
    )
    frontier = deque(resolve(roots or [], set(range(len(nodes))), "roots"))
    visited = set(frontier)
    parents: dict[int, set[int]] = {i: set() for i in range(len(nodes))}
    edges: set[tuple[int, int]] = set()

    while frontier:
        x = frontier.popleft()
        remaining = [i for i in range(len(nodes)) if i != x and i not in parents[x]]
        if not remaining:
            continue
        subject = f"effects of {nodes[x].name}"
        effects = _ask(
            client,
            render_bfs_effects(nodes, nodes[x], [nodes[i].name for i in remaining]),
            parse_node_list,
            1 + retries,
            subject,
            report,
            spend,
        )
        for y in resolve(effects or [], set(remaining), subject):
            edges.add((x, y))
            parents[y].add(x)
            if y not in visited:
                visited.add(y)
                frontier.append(y)

    unvisited = len(nodes) - len(visited)
    if unvisited:
        logger.info(f"BFS prior left {unvisited} variable(s) unreached")
    logger.info(f"BFS prior: {len(edges)} edges ({report.requests} requests)")
    return CausalGraph(nodes, directed_edges=frozenset(edges), name=name)
