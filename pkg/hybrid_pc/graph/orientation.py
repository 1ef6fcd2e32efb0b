"""Edge orientation rules shared by CPDAG construction and PC."""

import logging

from .models import CausalGraph, Edge

logger = logging.getLogger(__name__)


def v_structures(g: CausalGraph, unshielded_only: bool = True) -> set[tuple[int, int, int]]:
    """
    Collect colliders a -> b <- c of the directed part of g.

    Args:
        g: Graph to inspect
        unshielded_only: Only count colliders whose outer nodes are non-adjacent

    Returns:
        Set of (a, b, c) triples with a < c
    """
    result: set[tuple[int, int, int]] = set()
    for b in range(g.n_nodes):
        parents = g.parents(b)
        for i, a in enumerate(parents):
            for c in parents[i + 1:]:
                if unshielded_only and g.adjacent(a, c):
                    continue
                result.add((a, b, c))
    return result


class _PartialGraph:
    """Mutable working copy of a mixed graph used while applying rules."""

    def __init__(self, n: int, directed: set[Edge], undirected: set[Edge]):
        self.n = n
        self.directed = set(directed)
        self.undirected = {(min(a, b), max(a, b)) for a, b in undirected}

    def is_undirected(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.undirected

    def is_directed(self, a: int, b: int) -> bool:
        return (a, b) in self.directed

    def adjacent(self, a: int, b: int) -> bool:
        return self.is_directed(a, b) or self.is_directed(b, a) or self.is_undirected(a, b)

    def orient(self, a: int, b: int) -> None:
        self.undirected.discard((min(a, b), max(a, b)))
        self.directed.add((a, b))

    def _r1(self, a: int, b: int) -> bool:
        # c -> a - b with c, b non-adjacent
        return any(
            self.is_directed(c, a) and not self.adjacent(c, b)
            for c in range(self.n)
            if c not in (a, b)
        )

    def _r2(self, a: int, b: int) -> bool:
        # a -> c -> b
        return any(
            self.is_directed(a, c) and self.is_directed(c, b)
            for c in range(self.n)
            if c not in (a, b)
        )

    def _r3(self, a: int, b: int) -> bool:
        # a - c -> b and a - d -> b with c, d non-adjacent
        candidates = [
            c for c in range(self.n)
            if c not in (a, b) and self.is_undirected(a, c) and self.is_directed(c, b)
        ]
        return any(
            not self.adjacent(c, d)
            for i, c in enumerate(candidates)
            for d in candidates[i + 1:]
        )

    def _r4(self, a: int, b: int) -> bool:
        # a - k -> l -> b, a adjacent to l, k and b non-adjacent
        for k in range(self.n):
            if k in (a, b) or not self.is_undirected(a, k) or self.adjacent(k, b):
                continue
            for m in range(self.n):
                if m in (a, b, k):
                    continue
                if self.is_directed(k, m) and self.is_directed(m, b) and self.adjacent(a, m):
                    return True
        return False

    def apply_meek(self) -> int:
        """Apply Meek rules R1-R4 until no undirected edge changes; return orientations made."""
        oriented = 0
        changed = True
        while changed:
            changed = False
            for lo, hi in sorted(self.undirected):
                for a, b in ((lo, hi), (hi, lo)):
                    if not self.is_undirected(a, b):
                        break
                    if self._r1(a, b) or self._r2(a, b) or self._r3(a, b) or self._r4(a, b):
                        self.orient(a, b)
                        oriented += 1
                        changed = True
        return oriented


def meek_closure(g: CausalGraph) -> CausalGraph:
    """
    Orient undirected edges of g by Meek rules R1-R4 until closure.

    Already directed edges are never changed.

    Args:
        g: Mixed graph

    Returns:
        Mixed graph with as many edges oriented as the rules compel
    """
    work = _PartialGraph(g.n_nodes, set(g.directed_edges), set(g.undirected_edges))
    count = work.apply_meek()
    logger.debug(f"Meek rules oriented {count} edge(s)")
    return g.with_edges(directed=work.directed, undirected=work.undirected)
