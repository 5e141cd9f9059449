"""Generalized Kneser hypergraph construction KG^r(F, s)."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx

from kneser_defects import DomainError, UsageError
from kneser_defects.hypergraph import Hypergraph, bits, mask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KneserSpec:
    """Uniformity r and intersection threshold s of a Kneser hypergraph."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise DomainError(f"Kneser uniformity r must be at least 2, got {self.r}")
        if self.s < 0:
            raise DomainError(f"Threshold s must be nonnegative, got {self.s}")


def check_threshold(f: Hypergraph, s: int) -> None:
    """Raise DomainError unless s < |e| for every edge e of f."""
    if s < 0:
        raise DomainError(f"Threshold s must be nonnegative, got {s}")
    for i, size in enumerate(f.edge_sizes()):
        if size <= s:
            raise DomainError(f"Edge {i} has size {size}, threshold s={s} requires size > s")


def intersection_table(f: Hypergraph) -> list[list[int]]:
    """Symmetric table of |e_i & e_j| over all edge pairs."""
    m = f.n_edges
    table = [[0] * m for _ in range(m)]
    for i in range(m):
        ei = f.edges[i]
        row = table[i]
        row[i] = ei.bit_count()
        for j in range(i + 1, m):
            size = (ei & f.edges[j]).bit_count()
            row[j] = size
            table[j][i] = size
    return table


def build_kneser(f: Hypergraph, spec: KneserSpec) -> Hypergraph:
    """Build KG^r(f, s): vertex i is edge i of f; r edges pairwise meeting in at most s vertices form a hyperedge.

    Hyperedges are emitted in lexicographic order of their index tuples.

    Raises:
        DomainError: If some edge of f has size <= s.
        CapacityError: If f has more edges than the vertex capacity.
    """
    check_threshold(f, spec.s)
    m = f.n_edges
    table = intersection_table(f)

    # compat[i]: indices j > i whose edge meets edge i in at most s vertices
    compat = [
        mask_of(j for j in range(i + 1, m) if table[i][j] <= spec.s)
        for i in range(m)
    ]

    out: list[int] = []
    chosen: list[int] = []

    def extend(candidates: int) -> None:
        if len(chosen) == spec.r:
            out.append(mask_of(chosen))
            return
        need = spec.r - len(chosen)
        for j in bits(candidates):
            rest = candidates & compat[j]
            # A partial tuple survives only if enough compatible indices remain
            if need > 1 and rest.bit_count() < need - 1:
                continue
            chosen.append(j)
            extend(rest)
            chosen.pop()

    for i in range(m):
        chosen.append(i)
        extend(compat[i])
        chosen.pop()

    logger.debug("KG^%d(F,%d): %d vertices, %d edges", spec.r, spec.s, m, len(out))
    return Hypergraph(m, tuple(out))


def kneser_graph_to_networkx(h: Hypergraph) -> nx.Graph:
    """Convert a 2-uniform hypergraph (a graph) to a networkx Graph on 0..n-1."""
    g = nx.Graph()
    g.add_nodes_from(range(h.n_vertices))
    for i, edge in enumerate(h.edges):
        members = list(bits(edge))
        if len(members) != 2:
            raise UsageError(f"Edge {i} has {len(members)} vertices, expected a graph")
        g.add_edge(*members)
    return g


def lifted_adjacency_preserved(base: Hypergraph, lifted: Hypergraph, s: int) -> bool:
    """Check that KG^2(base, 0) and KG^2(lifted, s) have the same edge set.

    Both hypergraphs must have the same number of edges; edge i of lifted is
    taken to be the image of edge i of base.
    """
    if base.n_edges != lifted.n_edges:
        raise UsageError(
            f"Edge counts differ: base has {base.n_edges}, lifted has {lifted.n_edges}"
        )
    plain = build_kneser(base, KneserSpec(r=2, s=0))
    shifted = build_kneser(lifted, KneserSpec(r=2, s=s))
    return plain.edges == shifted.edges
