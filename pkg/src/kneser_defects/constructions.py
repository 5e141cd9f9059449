"""
Hypergraph families with known chromatic numbers and defects.

- complete_uniform: K_n^k, all k-subsets of n vertices.
- thm2_family: every n-subset of [2n+k] extended by a common tail S of size s.
  Its Kneser graph at threshold s is the Kneser graph of K_{2n+k}^n, while
  the equitable defect at s jumps to l + s.
- thm3_family: k pairwise disjoint blocks of size s+1. cd and ecd at any
  threshold l in (s/2, s] equal k(2l - s + 1), far above chi = k.

Each family comes with its predicted values and the explicit partitions or
colorings that witness the upper bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from kneser_defects import DomainError
from kneser_defects.chromatic import Coloring
from kneser_defects.defect import DefectCertificate
from kneser_defects.hypergraph import Hypergraph, VertexSet, mask_of


def complete_uniform(n: int, k: int) -> Hypergraph:
    """K_n^k: n vertices, every k-subset as an edge, in lexicographic order.

    Raises:
        DomainError: If n < 1, k < 1 (empty edges are not allowed) or k > n.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if k < 1:
        raise DomainError(f"k must be at least 1 (edges are nonempty), got {k}")
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    return Hypergraph(n, tuple(mask_of(c) for c in combinations(range(n), k)))


@dataclass(frozen=True)
class Thm2Params:
    """Parameters of the tail-extended complete family: target chi l, tail size s, block size n."""

    l: int
    s: int
    n: int

    def __post_init__(self) -> None:
        if self.l < 2:
            raise DomainError(f"l must be at least 2, got {self.l}")
        if self.s < 1:
            raise DomainError(f"s must be positive, got {self.s}")
        if self.n < 1:
            raise DomainError(f"n must be positive, got {self.n}")

    @property
    def k(self) -> int:
        return self.l - 2

    @property
    def base_size(self) -> int:
        """Size of the base ground set [2n+k]."""
        return 2 * self.n + self.k


@dataclass(frozen=True)
class Thm3Params:
    """Parameters of the disjoint-blocks family: k blocks, even s (blocks have size s+1)."""

    k: int
    s: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"k must be positive, got {self.k}")
        if self.s < 2 or self.s % 2:
            raise DomainError(f"s must be an even positive integer, got {self.s}")

    def thresholds(self) -> range:
        """The thresholds l = s/2+1 .. s where the defect formula applies."""
        return range(self.s // 2 + 1, self.s + 1)


def thm2_family(p: Thm2Params) -> Hypergraph:
    """Edges e | S for every n-subset e of [2n+k]; tail S occupies the last s vertices."""
    base = p.base_size
    tail = mask_of(range(base, base + p.s))
    edges = tuple(mask_of(c) | tail for c in combinations(range(base), p.n))
    return Hypergraph(base + p.s, edges)


def thm2_predicted(p: Thm2Params) -> tuple[int, int]:
    """Predicted (chi(KG^2(F,s)), ecd^2(F,s)) = (l, l+s)."""
    return p.l, p.l + p.s


def thm2_upper_certificate(p: Thm2Params) -> DefectCertificate:
    """The equitable partition Y1 = first n-1 base vertices, Y2 = next n-1, Y0 = the rest and the tail."""
    width = p.base_size + p.s
    y1 = VertexSet.from_indices(width, range(0, p.n - 1))
    y2 = VertexSet.from_indices(width, range(p.n - 1, 2 * p.n - 2))
    y0 = VertexSet.full(width) - y1 - y2
    return DefectCertificate(y0, (y1, y2), equitable=True)


def thm2_chi_coloring(p: Thm2Params) -> Coloring:
    """A proper l-coloring of KG^2(F, s), transported from K_{2n+k}^n (edge order is shared)."""
    return complete_kneser_coloring(p.base_size, p.n, 2)


def thm3_family(p: Thm3Params) -> Hypergraph:
    """k pairwise disjoint edges of size s+1; edge i covers vertices i(s+1) .. (i+1)(s+1)-1."""
    block = p.s + 1
    edges = tuple(mask_of(range(i * block, (i + 1) * block)) for i in range(p.k))
    return Hypergraph(p.k * block, edges)


def _check_thm3_threshold(p: Thm3Params, l: int) -> None:
    if l not in p.thresholds():
        raise DomainError(
            f"Threshold l={l} outside {p.s // 2 + 1}..{p.s}, where the defect formula holds"
        )


def thm3_predicted(p: Thm3Params, l: int) -> tuple[int, int, int]:
    """Predicted (chi(KG^2(F,s)), cd^2(F,l), ecd^2(F,l)) = (k, k(2l-s+1), k(2l-s+1)).

    Raises:
        DomainError: If l is not in s/2+1 .. s.
    """
    _check_thm3_threshold(p, l)
    defect = p.k * (2 * l - p.s + 1)
    return p.k, defect, defect


def thm3_upper_certificate(p: Thm3Params, l: int) -> DefectCertificate:
    """Per block, the first s-l vertices go to Y1, the next s-l to Y2, the rest to Y0.

    Raises:
        DomainError: If l is not in s/2+1 .. s.
    """
    _check_thm3_threshold(p, l)
    block = p.s + 1
    take = p.s - l
    width = p.k * block
    y1: list[int] = []
    y2: list[int] = []
    for i in range(p.k):
        start = i * block
        y1.extend(range(start, start + take))
        y2.extend(range(start + take, start + 2 * take))
    y1_set = VertexSet.from_indices(width, y1)
    y2_set = VertexSet.from_indices(width, y2)
    y0_set = VertexSet.full(width) - y1_set - y2_set
    return DefectCertificate(y0_set, (y1_set, y2_set), equitable=True)


def closed_form_chi_complete(n: int, k: int, r: int) -> int | None:
    """ceil((n - r(k-1)) / (r-1)) when n >= r(k-1)+1, else None."""
    if r < 2:
        raise DomainError(f"r must be at least 2, got {r}")
    if n < r * (k - 1) + 1:
        return None
    return math.ceil((n - r * (k - 1)) / (r - 1))


def closed_form_cd_complete(n: int, k: int, r: int) -> int | None:
    """n - r(k-1) when n >= r(k-1)+1, else None."""
    if r < 2:
        raise DomainError(f"r must be at least 2, got {r}")
    if n < r * (k - 1) + 1:
        return None
    return n - r * (k - 1)


def complete_kneser_coloring(n: int, k: int, r: int) -> Coloring:
    """A proper coloring of KG^r(K_n^k, 0) with the closed-form number of colors.

    The k-set A (1-based) gets color min(ceil(min(A) / (r-1)), t), t the
    closed form: r pairwise disjoint sets have r distinct minima, so they
    cannot share one of the first t-1 colors, and the sets with color t all
    live in the last r*k - 1 elements, too few for r disjoint k-sets.

    Raises:
        DomainError: If n < r(k-1)+1, or the parameters do not define K_n^k.
    """
    t = closed_form_chi_complete(n, k, r)
    if t is None:
        raise DomainError(f"n={n} is below r(k-1)+1={r * (k - 1) + 1}")
    h = complete_uniform(n, k)
    colors = []
    for edge in h.edges:
        smallest = (edge & -edge).bit_length()
        colors.append(min(math.ceil(smallest / (r - 1)), t) - 1)
    return Coloring(tuple(colors), t)
