"""
Exact weak chromatic number of a hypergraph (no hyperedge monochromatic).

The solver tries t = lower bound, lower bound + 1, ... below a greedy upper
bound and runs a backtracking search for each t. The search colors the
vertex with the fewest colors left (ties by descending degree, then index),
lets a vertex open at most one new color, and forward-checks edges with a
single uncolored vertex. The search order is fixed, so the returned witness
is deterministic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from networkx.algorithms.approximation import clique as approx_clique

from kneser_defects import DomainError, UsageError, get_default_budget
from kneser_defects.hypergraph import Hypergraph, bits
from kneser_defects.kneser import kneser_graph_to_networkx

logger = logging.getLogger(__name__)

_UNCOLORED = -1
_DIVERSE = -2


@dataclass(frozen=True)
class Coloring:
    """A total map vertex -> color in 0..palette_size-1."""

    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))
        for v, c in enumerate(self.colors):
            if not 0 <= c < self.palette_size:
                raise UsageError(f"Vertex {v} has color {c} outside palette of {self.palette_size}")

    @property
    def n_used(self) -> int:
        return len(set(self.colors))

    def to_json(self) -> dict[str, Any]:
        return {"palette_size": self.palette_size, "colors": list(self.colors)}


@dataclass(frozen=True)
class ChiResult:
    """Outcome of chromatic_number_exact().

    chi is None when the node budget ran out; witness then holds the best
    coloring found and the bounds bracket the true value.
    """

    chi: int | None
    witness: Coloring
    lower_bound: int
    upper_bound: int
    nodes_explored: int
    prunes: int = 0

    @property
    def conclusive(self) -> bool:
        return self.chi is not None

    def to_json(self) -> dict[str, Any]:
        return {
            "chi": self.chi,
            "conclusive": self.conclusive,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "nodes_explored": self.nodes_explored,
            "prunes": self.prunes,
            "witness": self.witness.to_json(),
        }


def is_proper_coloring(h: Hypergraph, c: Coloring) -> bool:
    """Return True iff no edge of h is monochromatic under c."""
    if len(c.colors) != h.n_vertices:
        raise UsageError(
            f"Coloring covers {len(c.colors)} vertices, hypergraph has {h.n_vertices}"
        )
    for edge in h.edges:
        first = None
        for v in bits(edge):
            if first is None:
                first = c.colors[v]
            elif c.colors[v] != first:
                break
        else:
            return False
    return True


def _check_colorable(h: Hypergraph) -> None:
    for i, edge in enumerate(h.edges):
        if edge.bit_count() == 1:
            raise DomainError(f"Edge {i} is a singleton, no coloring can make it non-monochromatic")


def greedy_upper_bound(h: Hypergraph) -> Coloring:
    """Color vertices in static order with the least color that keeps every edge non-monochromatic.

    Raises:
        DomainError: If h has a singleton edge.
    """
    _check_colorable(h)
    incidence = h.incidence()
    colors = [_UNCOLORED] * h.n_vertices

    for v in h.degree_order():
        forbidden: set[int] = set()
        for e in incidence[v]:
            others = [colors[u] for u in bits(h.edges[e]) if u != v]
            if _UNCOLORED in others:
                continue
            if len(set(others)) == 1:
                forbidden.add(others[0])
        c = 0
        while c in forbidden:
            c += 1
        colors[v] = c

    palette = max(colors) + 1 if colors else 0
    return Coloring(tuple(colors), palette)


class _BudgetExhausted(Exception):
    pass


class _ColoringSearch:
    """Backtracking search for a proper coloring with exactly t colors available."""

    def __init__(self, h: Hypergraph, t: int, rank: list[int], incidence: list[list[int]],
                 budget: int | None, nodes: int, prunes: int) -> None:
        self.n = h.n_vertices
        self.t = t
        self.rank = rank
        self.incidence = incidence
        self.budget = budget
        self.nodes = nodes
        self.prunes = prunes

        self.color = [_UNCOLORED] * self.n
        # Per edge: _UNCOLORED, the single color seen so far, or _DIVERSE
        self.state = [_UNCOLORED] * h.n_edges
        self.uncolored = list(h.edges)
        self.forbid = [[0] * t for _ in range(self.n)]
        self.allowed = [t] * self.n

    def _select(self) -> int:
        best = -1
        best_key = (self.t + 1, self.n)
        for v in range(self.n):
            if self.color[v] != _UNCOLORED:
                continue
            key = (self.allowed[v], self.rank[v])
            if key < best_key:
                best, best_key = v, key
        return best

    def _assign(self, v: int, c: int) -> tuple[bool, list[tuple[int, int]], list[tuple[int, int]]]:
        self.color[v] = c
        edge_trail: list[tuple[int, int]] = []
        forbid_trail: list[tuple[int, int]] = []
        ok = True
        bit = 1 << v
        for e in self.incidence[v]:
            old = self.state[e]
            self.uncolored[e] &= ~bit
            edge_trail.append((e, old))
            if old == _DIVERSE:
                continue
            new = c if old in (_UNCOLORED, c) else _DIVERSE
            self.state[e] = new
            if new == _DIVERSE:
                continue
            rest = self.uncolored[e]
            if not rest:
                ok = False
            elif not rest & (rest - 1):
                u = rest.bit_length() - 1
                counts = self.forbid[u]
                if counts[new] == 0:
                    self.allowed[u] -= 1
                    if self.allowed[u] == 0:
                        ok = False
                counts[new] += 1
                forbid_trail.append((u, new))
        return ok, edge_trail, forbid_trail

    def _undo(self, v: int, edge_trail: list[tuple[int, int]],
              forbid_trail: list[tuple[int, int]]) -> None:
        for u, c in reversed(forbid_trail):
            counts = self.forbid[u]
            counts[c] -= 1
            if counts[c] == 0:
                self.allowed[u] += 1
        bit = 1 << v
        for e, old in reversed(edge_trail):
            self.state[e] = old
            self.uncolored[e] |= bit
        self.color[v] = _UNCOLORED

    def _extend(self, assigned: int, max_used: int) -> bool:
        if assigned == self.n:
            return True
        v = self._select()
        counts = self.forbid[v]
        for c in range(min(self.t, max_used + 2)):
            if counts[c]:
                continue
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _BudgetExhausted
            ok, edge_trail, forbid_trail = self._assign(v, c)
            if not ok:
                self.prunes += 1
            elif self._extend(assigned + 1, max(max_used, c)):
                return True
            self._undo(v, edge_trail, forbid_trail)
        return False

    def run(self) -> Coloring | None:
        if self._extend(0, -1):
            return Coloring(tuple(self.color), self.t)
        return None


def clique_lower_bound(h: Hypergraph) -> int:
    """A sound lower bound on chi for a hypergraph with at least one edge.

    Graphs (2-uniform) get the size of a clique found by networkx's
    approximation; wider edges only give 2.
    """
    if h.is_uniform() == 2:
        g = kneser_graph_to_networkx(h)
        return max(2, len(approx_clique.max_clique(g)))
    return 2


def chromatic_number_exact(h: Hypergraph, budget: int | None = None) -> ChiResult:
    """Compute the weak chromatic number of h with a witness coloring.

    Args:
        h: Any hypergraph without singleton edges.
        budget: Maximum number of search nodes; None uses get_default_budget().

    Returns:
        A ChiResult; chi is None if the budget ran out before the search closed.

    Raises:
        DomainError: If h has a singleton edge.
    """
    if budget is None:
        budget = get_default_budget()
    _check_colorable(h)

    if h.n_vertices == 0:
        return ChiResult(0, Coloring((), 0), 0, 0, 0)
    if not h.edges:
        return ChiResult(1, Coloring((0,) * h.n_vertices, 1), 1, 1, 0)

    greedy = greedy_upper_bound(h)
    upper = greedy.palette_size
    lower = min(clique_lower_bound(h), upper)

    order = h.degree_order()
    rank = [0] * h.n_vertices
    for pos, v in enumerate(order):
        rank[v] = pos
    incidence = h.incidence()

    nodes = prunes = 0
    for t in range(lower, upper):
        search = _ColoringSearch(h, t, rank, incidence, budget, nodes, prunes)
        try:
            found = search.run()
        except _BudgetExhausted:
            logger.info("chromatic search budget of %d nodes exhausted at t=%d", budget, t)
            return ChiResult(None, greedy, t, upper, search.nodes, search.prunes)
        nodes, prunes = search.nodes, search.prunes
        if found is not None:
            logger.debug("chi=%d after %d nodes, %d prunes (bounds %d..%d)",
                         t, nodes, prunes, lower, upper)
            return ChiResult(t, found, t, t, nodes, prunes)

    logger.debug("chi=%d from greedy after %d nodes, %d prunes", upper, nodes, prunes)
    return ChiResult(upper, greedy, upper, upper, nodes, prunes)
