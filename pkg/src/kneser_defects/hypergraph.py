"""
Hypergraph core - set systems as bit masks, basic predicates, and the text file format.

Vertices are the integers 0..n-1 in memory and 1..n in files. Edges are
stored as int bit masks in the order they were built or parsed; the edge
index is the identity of the corresponding Kneser vertex, so duplicates
are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from kneser_defects import MAX_VERTICES, CapacityError, HypergraphParseError, UsageError


def mask_of(indices: Iterable[int]) -> int:
    """Return the bit mask with the given vertex indices set."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of a hypergraph with `width` vertices."""

    mask: int
    width: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.width:
            raise UsageError(f"Mask {self.mask:#x} does not fit {self.width} vertices")

    @classmethod
    def from_indices(cls, width: int, indices: Iterable[int]) -> VertexSet:
        indices = list(indices)
        for i in indices:
            if not 0 <= i < width:
                raise UsageError(f"Vertex {i} outside 0..{width - 1}")
        return cls(mask_of(indices), width)

    @classmethod
    def empty(cls, width: int) -> VertexSet:
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> VertexSet:
        return cls((1 << width) - 1, width)

    def members(self) -> list[int]:
        return list(bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def _check(self, other: VertexSet) -> None:
        if self.width != other.width:
            raise UsageError(f"Vertex universes differ: {self.width} vs {other.width}")

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.mask & other.mask, self.width)

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.mask | other.mask, self.width)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.mask & ~other.mask, self.width)

    def isdisjoint(self, other: VertexSet) -> bool:
        self._check(other)
        return not self.mask & other.mask


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph: n_vertices vertices and an ordered tuple of edge masks."""

    n_vertices: int
    edges: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise UsageError(f"Vertex count must be nonnegative, got {self.n_vertices}")
        if self.n_vertices > MAX_VERTICES:
            raise CapacityError(
                f"{self.n_vertices} vertices exceeds the capacity of {MAX_VERTICES}"
            )
        # Normalize lists to tuples so instances stay hashable
        object.__setattr__(self, "edges", tuple(self.edges))
        for i, edge in enumerate(self.edges):
            if edge <= 0:
                raise UsageError(f"Edge {i} is empty")
            if edge >> self.n_vertices:
                raise UsageError(f"Edge {i} uses a vertex outside 0..{self.n_vertices - 1}")

    @classmethod
    def from_edge_lists(cls, n_vertices: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
        """Build a hypergraph from 0-based vertex index lists."""
        return cls(n_vertices, tuple(mask_of(e) for e in edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_set(self, i: int) -> VertexSet:
        return VertexSet(self.edges[i], self.n_vertices)

    def edge_sizes(self) -> list[int]:
        return [e.bit_count() for e in self.edges]

    def vertex_set(self) -> VertexSet:
        return VertexSet.full(self.n_vertices)

    def degrees(self) -> list[int]:
        """Number of edges incident to each vertex."""
        deg = [0] * self.n_vertices
        for edge in self.edges:
            for v in bits(edge):
                deg[v] += 1
        return deg

    def degree(self, v: int) -> int:
        return sum(1 for edge in self.edges if edge >> v & 1)

    def degree_order(self) -> list[int]:
        """Vertices by descending degree, ties by index."""
        deg = self.degrees()
        return sorted(range(self.n_vertices), key=lambda v: (-deg[v], v))

    def incidence(self) -> list[list[int]]:
        """Edge indices incident to each vertex, in edge order."""
        inc: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for i, edge in enumerate(self.edges):
            for v in bits(edge):
                inc[v].append(i)
        return inc

    def is_uniform(self) -> int | None:
        """Return the common edge size, or None if sizes differ or there are no edges."""
        sizes = set(self.edge_sizes())
        if len(sizes) == 1:
            return sizes.pop()
        return None


def min_edge_size(h: Hypergraph) -> int | None:
    """Return the smallest edge size, or None when h has no edges."""
    if not h.edges:
        return None
    return min(h.edge_sizes())


def subseteq_s(a: VertexSet, b: VertexSet, s: int) -> bool:
    """Return True iff |a - b| <= s, i.e. a is contained in b up to s elements."""
    if a.width != b.width:
        raise UsageError(f"Vertex universes differ: {a.width} vs {b.width}")
    if s < 0:
        raise UsageError(f"Threshold s must be nonnegative, got {s}")
    return (a.mask & ~b.mask).bit_count() <= s


# --- File format ---

def _parse_int(token: str, line_no: int, what: str) -> int:
    if not (token.isascii() and token.isdigit()):
        raise HypergraphParseError(line_no, f"{what} must be a nonnegative integer, got '{token}'")
    return int(token)


def parse_hypergraph(text: bytes | str) -> Hypergraph:
    """Parse the `p hg` text format into a Hypergraph.

    Raises:
        HypergraphParseError: On any malformed line, naming its line number.
        CapacityError: If the header declares more than MAX_VERTICES vertices.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise HypergraphParseError(1, f"not valid UTF-8 ({e.reason})") from e

    n_vertices: int | None = None
    n_edges = 0
    header_line = 0
    edges: list[int] = []
    last_line = 0

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        last_line = line_no
        tokens = line.split()
        tag = tokens[0]

        if tag == "c":
            continue

        if tag == "p":
            if n_vertices is not None:
                raise HypergraphParseError(line_no, "duplicate header line")
            if len(tokens) != 4 or tokens[1] != "hg":
                raise HypergraphParseError(line_no, "header must be 'p hg <n_vertices> <n_edges>'")
            n_vertices = _parse_int(tokens[2], line_no, "vertex count")
            n_edges = _parse_int(tokens[3], line_no, "edge count")
            if n_vertices > MAX_VERTICES:
                raise CapacityError(
                    f"line {line_no}: {n_vertices} vertices exceeds the capacity of {MAX_VERTICES}"
                )
            header_line = line_no
            continue

        if tag == "e":
            if n_vertices is None:
                raise HypergraphParseError(line_no, "edge line before header")
            if len(tokens) == 1:
                raise HypergraphParseError(line_no, "empty edge")
            if len(edges) == n_edges:
                raise HypergraphParseError(line_no, f"more edges than the {n_edges} declared")
            mask = 0
            for token in tokens[1:]:
                v = _parse_int(token, line_no, "vertex")
                if not 1 <= v <= n_vertices:
                    raise HypergraphParseError(
                        line_no, f"vertex {v} out of range 1..{n_vertices}"
                    )
                if mask >> (v - 1) & 1:
                    raise HypergraphParseError(line_no, f"vertex {v} repeated")
                mask |= 1 << (v - 1)
            edges.append(mask)
            continue

        raise HypergraphParseError(line_no, f"unknown line type '{tag}'")

    if n_vertices is None:
        raise HypergraphParseError(max(last_line, 1), "missing 'p hg' header")
    if len(edges) != n_edges:
        raise HypergraphParseError(
            header_line, f"header declares {n_edges} edges but {len(edges)} were given"
        )
    return Hypergraph(n_vertices, tuple(edges))


def emit_hypergraph(h: Hypergraph) -> bytes:
    """Return the canonical text form of h (no comments, sorted 1-based vertices)."""
    lines = [f"p hg {h.n_vertices} {h.n_edges}"]
    for edge in h.edges:
        lines.append("e " + " ".join(str(v + 1) for v in bits(edge)))
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_hypergraph(path: Path | str) -> Hypergraph:
    """Read and parse a hypergraph file."""
    return parse_hypergraph(Path(path).read_bytes())


def write_hypergraph(h: Hypergraph, path: Path | str) -> None:
    """Write h to path in canonical form."""
    Path(path).write_bytes(emit_hypergraph(h))
