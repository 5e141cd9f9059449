"""
Exact colorability defects cd^r(F, s) and ecd^r(F, s) with optimal certificates.

Both values minimize |X0| over partitions {X0, X1, ..., Xr} of V(F) in which
no part Xi s-almost-contains an edge, i.e. |e & Xi| <= |e| - s - 1 for every
edge e. The equitable variant also requires part sizes to differ by at most
one. The search is a depth-first branch-and-bound over vertices in degree
order, trying the parts before X0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from kneser_defects import DomainError, UsageError, get_default_budget
from kneser_defects.hypergraph import Hypergraph, VertexSet, subseteq_s
from kneser_defects.kneser import check_threshold

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DefectCertificate:
    """A partition {x0, X1, ..., Xr} of the vertex set witnessing an upper bound on cd or ecd."""

    x0: VertexSet
    parts: tuple[VertexSet, ...]
    equitable: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def value(self) -> int:
        return len(self.x0)

    def part_sizes(self) -> list[int]:
        return [len(p) for p in self.parts]


@dataclass(frozen=True)
class DefectResult:
    """Outcome of cd_exact() / ecd_exact().

    value is None when the node budget ran out; certificate then holds the
    best partition found and the bounds bracket the true value.
    """

    value: int | None
    certificate: DefectCertificate
    lower_bound: int
    upper_bound: int
    nodes_explored: int
    r: int
    s: int
    equitable: bool
    prunes: int = 0
    # Single-threaded search: the certificate is reproducible
    deterministic: bool = True

    @property
    def conclusive(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "conclusive": self.conclusive,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "nodes_explored": self.nodes_explored,
            "prunes": self.prunes,
            "deterministic": self.deterministic,
            "certificate": certificate_to_json(self.certificate, self.r, self.s),
        }


def part_admissible(f: Hypergraph, s: int, part: VertexSet) -> bool:
    """Return True iff no edge e of f is s-almost-contained in part, i.e. |e - part| >= s + 1."""
    return not any(subseteq_s(f.edge_set(i), part, s) for i in range(f.n_edges))


def verify_certificate(f: Hypergraph, s: int, cert: DefectCertificate) -> bool:
    """Return True iff cert is a valid (equitable, if flagged) defect partition for threshold s.

    Raises:
        UsageError: If a set of cert is over a different vertex universe.
        DomainError: If some edge of f has size <= s.
    """
    for vs in (cert.x0, *cert.parts):
        if vs.width != f.n_vertices:
            raise UsageError(
                f"Certificate set has width {vs.width}, hypergraph has {f.n_vertices} vertices"
            )
    check_threshold(f, s)

    seen = 0
    for vs in (cert.x0, *cert.parts):
        if seen & vs.mask:
            return False
        seen |= vs.mask
    if seen != f.vertex_set().mask:
        return False

    if not all(part_admissible(f, s, part) for part in cert.parts):
        return False

    if cert.equitable and cert.parts:
        sizes = cert.part_sizes()
        if max(sizes) - min(sizes) > 1:
            return False
    return True


def certificate_to_json(cert: DefectCertificate, r: int, s: int) -> dict[str, Any]:
    """Certificate JSON: value, x0 and parts as sorted 1-based lists, equitable flag, threshold_s, r."""
    if r != cert.r:
        raise UsageError(f"Certificate has {cert.r} parts, expected r={r}")
    return {
        "value": cert.value,
        "x0": [v + 1 for v in cert.x0],
        "parts": [[v + 1 for v in part] for part in cert.parts],
        "equitable": cert.equitable,
        "threshold_s": s,
        "r": r,
    }


def certificate_from_json(obj: dict[str, Any], width: int) -> DefectCertificate:
    """Read a certificate written by certificate_to_json() back over `width` vertices."""
    try:
        x0 = VertexSet.from_indices(width, (v - 1 for v in obj["x0"]))
        parts = tuple(
            VertexSet.from_indices(width, (v - 1 for v in part)) for part in obj["parts"]
        )
        equitable = bool(obj.get("equitable", False))
    except (KeyError, TypeError) as e:
        raise UsageError(f"Malformed certificate object: {e}") from e
    if "r" in obj and obj["r"] != len(parts):
        raise UsageError(f"Certificate declares r={obj['r']} but lists {len(parts)} parts")
    return DefectCertificate(x0, parts, equitable)


class _BudgetExhausted(Exception):
    pass


class _DefectSearch:
    """Branch-and-bound over assignments vertex -> {X0, X1, ..., Xr}."""

    def __init__(self, f: Hypergraph, r: int, s: int, equitable: bool, budget: int | None) -> None:
        self.n = f.n_vertices
        self.r = r
        self.equitable = equitable
        self.budget = budget
        self.nodes = 0
        self.prunes = 0

        self.order = f.degree_order()
        self.incidence = f.incidence()
        self.cap = [size - s - 1 for size in f.edge_sizes()]
        # counts[i][e] = |e & X_{i+1}|
        self.counts = [[0] * f.n_edges for _ in range(r)]
        self.sizes = [0] * r
        self.x0_size = 0
        self.part_of = [0] * self.n

        # A vertex in an edge with zero capacity can never leave X0
        self.zero_cap = [any(self.cap[e] == 0 for e in self.incidence[v]) for v in range(self.n)]
        self.suffix_zero = [0] * (self.n + 1)
        for pos in range(self.n - 1, -1, -1):
            self.suffix_zero[pos] = self.suffix_zero[pos + 1] + self.zero_cap[self.order[pos]]
        self.root_lower = self.suffix_zero[0]

        self.best = self.n
        self.best_part_of = [0] * self.n
        self.done = self.best <= self.root_lower

    def _admissible(self, v: int, i: int) -> bool:
        counts = self.counts[i]
        cap = self.cap
        return all(counts[e] < cap[e] for e in self.incidence[v])

    def _forced(self, pos: int, used: int) -> int:
        """Lower bound on how many of the unassigned vertices must still go to X0."""
        if used < self.r:
            return self.suffix_zero[pos]
        forced = 0
        for q in range(pos, self.n):
            v = self.order[q]
            if self.zero_cap[v] or not any(self._admissible(v, i) for i in range(self.r)):
                forced += 1
        return forced

    def _balance_possible(self, pos: int) -> bool:
        """True iff the remaining vertices can still level every part to within one of the largest."""
        top = max(self.sizes)
        deficit = sum(max(0, top - 1 - size) for size in self.sizes)
        return deficit <= self.n - pos

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted

    def _extend(self, pos: int, used: int) -> None:
        if self.equitable and not self._balance_possible(pos):
            self.prunes += 1
            return
        if self.x0_size + self._forced(pos, used) >= self.best:
            self.prunes += 1
            return
        if pos == self.n:
            self.best = self.x0_size
            self.best_part_of = list(self.part_of)
            self.done = self.best <= self.root_lower
            return

        v = self.order[pos]
        # The i-th distinct part to appear is X_{i+1}
        for i in range(min(used + 1, self.r)):
            if not self._admissible(v, i):
                continue
            self._tick()
            counts = self.counts[i]
            for e in self.incidence[v]:
                counts[e] += 1
            self.sizes[i] += 1
            self.part_of[v] = i + 1
            self._extend(pos + 1, max(used, i + 1))
            self.part_of[v] = 0
            self.sizes[i] -= 1
            for e in self.incidence[v]:
                counts[e] -= 1
            if self.done:
                return

        self._tick()
        self.x0_size += 1
        self._extend(pos + 1, used)
        self.x0_size -= 1

    def run(self) -> None:
        if not self.done:
            self._extend(0, 0)

    def certificate(self) -> DefectCertificate:
        masks = [0] * (self.r + 1)
        for v, part in enumerate(self.best_part_of):
            masks[part] |= 1 << v
        return DefectCertificate(
            VertexSet(masks[0], self.n),
            tuple(VertexSet(m, self.n) for m in masks[1:]),
            self.equitable,
        )


def _solve(f: Hypergraph, r: int, s: int, equitable: bool, budget: int | None) -> DefectResult:
    if r < 2:
        raise DomainError(f"Number of parts r must be at least 2, got {r}")
    check_threshold(f, s)
    if budget is None:
        budget = get_default_budget()

    search = _DefectSearch(f, r, s, equitable, budget)
    name = "ecd" if equitable else "cd"
    try:
        search.run()
    except _BudgetExhausted:
        logger.info("%s search budget of %d nodes exhausted (bounds %d..%d)",
                    name, budget, search.root_lower, search.best)
        return DefectResult(None, search.certificate(), search.root_lower, search.best,
                            search.nodes, r, s, equitable, search.prunes)

    logger.debug("%s^%d(F,%d)=%d after %d nodes, %d prunes (root bound %d)",
                 name, r, s, search.best, search.nodes, search.prunes, search.root_lower)
    return DefectResult(search.best, search.certificate(), search.best, search.best,
                        search.nodes, r, s, equitable, search.prunes)


def cd_exact(f: Hypergraph, r: int, s: int, budget: int | None = None) -> DefectResult:
    """Compute the s-th r-colorability defect cd^r(f, s) with an optimal certificate.

    Raises:
        DomainError: If r < 2 or some edge of f has size <= s.
    """
    return _solve(f, r, s, equitable=False, budget=budget)


def ecd_exact(f: Hypergraph, r: int, s: int, budget: int | None = None) -> DefectResult:
    """Compute the s-th equitable r-colorability defect ecd^r(f, s) with an optimal certificate.

    Raises:
        DomainError: If r < 2 or some edge of f has size <= s.
    """
    return _solve(f, r, s, equitable=True, budget=budget)


def defect_profile(f: Hypergraph, r: int, equitable: bool = False,
                   budget: int | None = None, max_s: int | None = None) -> list[DefectResult]:
    """Defects of f at thresholds s = 0 .. max_s.

    max_s defaults to min|e| - 1, the largest legal threshold (0 if f has no edges).
    """
    if max_s is None:
        sizes = f.edge_sizes()
        max_s = min(sizes) - 1 if sizes else 0
    solver = ecd_exact if equitable else cd_exact
    return [solver(f, r, s, budget=budget) for s in range(max_s + 1)]
