"""Tests for the hypergraph core and its file format."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kneser_defects import CapacityError, HypergraphParseError, UsageError
from kneser_defects.hypergraph import (
    Hypergraph,
    VertexSet,
    bits,
    emit_hypergraph,
    mask_of,
    min_edge_size,
    parse_hypergraph,
    read_hypergraph,
    subseteq_s,
    write_hypergraph,
)


class TestMasks:
    """Tests for mask_of() and bits()."""

    def test_mask_of(self):
        assert mask_of([0, 2, 5]) == 0b100101

    def test_bits_increasing(self):
        assert list(bits(0b100101)) == [0, 2, 5]

    def test_empty(self):
        assert mask_of([]) == 0
        assert list(bits(0)) == []


class TestVertexSet:
    """Tests for VertexSet."""

    def test_from_indices_and_members(self):
        vs = VertexSet.from_indices(6, [4, 1, 1])
        assert vs.members() == [1, 4]
        assert len(vs) == 2
        assert 4 in vs
        assert 3 not in vs

    def test_out_of_range_index(self):
        with pytest.raises(UsageError):
            VertexSet.from_indices(3, [3])

    def test_mask_too_wide(self):
        with pytest.raises(UsageError):
            VertexSet(0b1000, 3)

    def test_set_algebra(self):
        a = VertexSet.from_indices(5, [0, 1, 2])
        b = VertexSet.from_indices(5, [2, 3])
        assert (a & b).members() == [2]
        assert (a | b).members() == [0, 1, 2, 3]
        assert (a - b).members() == [0, 1]
        assert not a.isdisjoint(b)
        assert (a - b).isdisjoint(b)

    def test_width_mismatch(self):
        with pytest.raises(UsageError):
            VertexSet.full(3) | VertexSet.full(4)

    def test_full_and_empty(self):
        assert len(VertexSet.full(5)) == 5
        assert len(VertexSet.empty(5)) == 0


class TestSubseteqS:
    """Tests for subseteq_s()."""

    def test_within_threshold(self):
        a = VertexSet.from_indices(6, [0, 1, 2])
        b = VertexSet.from_indices(6, [0, 1, 5])
        assert subseteq_s(a, b, 1)
        assert not subseteq_s(a, b, 0)

    def test_plain_subset_at_zero(self):
        a = VertexSet.from_indices(4, [1])
        assert subseteq_s(a, VertexSet.full(4), 0)

    def test_negative_threshold(self):
        with pytest.raises(UsageError):
            subseteq_s(VertexSet.full(2), VertexSet.full(2), -1)

    def test_width_mismatch(self):
        with pytest.raises(UsageError):
            subseteq_s(VertexSet.full(2), VertexSet.full(3), 0)

    @given(st.integers(0, 2**8 - 1), st.integers(0, 2**8 - 1), st.integers(0, 8))
    def test_monotone_in_threshold(self, a_mask, b_mask, s):
        a, b = VertexSet(a_mask, 8), VertexSet(b_mask, 8)
        if subseteq_s(a, b, s):
            assert all(subseteq_s(a, b, t) for t in range(s, 10))

    @given(st.integers(0, 2**8 - 1), st.integers(0, 2**8 - 1))
    def test_own_size_always_suffices(self, a_mask, b_mask):
        a, b = VertexSet(a_mask, 8), VertexSet(b_mask, 8)
        assert subseteq_s(a, b, len(a))
        assert subseteq_s(a, b, 0) == (a_mask & ~b_mask == 0)


class TestHypergraph:
    """Tests for Hypergraph construction and queries."""

    def test_degrees_and_order(self):
        h = Hypergraph.from_edge_lists(4, [[0, 1], [1, 2], [1, 3], [2, 3]])
        assert h.degrees() == [1, 3, 2, 2]
        assert h.degree(1) == 3
        assert h.degree_order() == [1, 2, 3, 0]

    def test_edge_set(self):
        h = Hypergraph.from_edge_lists(4, [[0, 1], [1, 2, 3]])
        e = h.edge_set(1)
        assert e.width == 4
        assert e.members() == [1, 2, 3]

    def test_incidence(self):
        h = Hypergraph.from_edge_lists(3, [[0, 1], [1, 2]])
        assert h.incidence() == [[0], [0, 1], [1]]

    def test_is_uniform(self):
        assert Hypergraph.from_edge_lists(3, [[0, 1], [1, 2]]).is_uniform() == 2
        assert Hypergraph.from_edge_lists(3, [[0, 1], [0, 1, 2]]).is_uniform() is None
        assert Hypergraph(3, ()).is_uniform() is None

    def test_duplicate_edges_kept(self):
        h = Hypergraph.from_edge_lists(2, [[0, 1], [1, 0]])
        assert h.n_edges == 2

    def test_min_edge_size(self):
        assert min_edge_size(Hypergraph.from_edge_lists(4, [[0, 1, 2], [3, 0]])) == 2
        assert min_edge_size(Hypergraph(4, ())) is None

    def test_empty_edge_rejected(self):
        with pytest.raises(UsageError):
            Hypergraph(3, (0,))

    def test_edge_out_of_range(self):
        with pytest.raises(UsageError):
            Hypergraph(2, (0b100,))

    def test_capacity(self):
        Hypergraph(128, ())
        with pytest.raises(CapacityError):
            Hypergraph(129, ())


class TestParseHypergraph:
    """Tests for parse_hypergraph()."""

    def test_basic(self):
        h = parse_hypergraph("c a comment\np hg 4 2\ne 1 2\ne 2 3 4\n")
        assert h.n_vertices == 4
        assert h.edges == (0b0011, 0b1110)

    def test_bytes_input(self):
        assert parse_hypergraph(b"p hg 2 1\ne 1 2\n").edges == (0b11,)

    def test_unsorted_vertices_accepted(self):
        assert parse_hypergraph("p hg 3 1\ne 3 1\n").edges == (0b101,)

    def test_blank_lines_and_lone_comment(self):
        h = parse_hypergraph("\nc\np hg 2 1\n\ne 1 2\nc trailing\n")
        assert h.n_edges == 1

    def test_no_trailing_newline(self):
        assert parse_hypergraph("p hg 2 1\ne 1 2").n_edges == 1

    def test_zero_vertices(self):
        h = parse_hypergraph("p hg 0 0\n")
        assert h.n_vertices == 0
        assert h.edges == ()

    @pytest.mark.parametrize("text, line_no", [
        ("p hg 3 1\ne 1 4\n", 2),
        ("p hg 3 1\ne 1 1\n", 2),
        ("p hg 3 1\ne\n", 2),
        ("e 1 2\np hg 3 1\n", 1),
        ("p hg 3 1\np hg 3 1\ne 1 2\n", 2),
        ("p hg 3 1\nx 1 2\n", 2),
        ("p hg 3 x\n", 1),
        ("p graph 3 1\n", 1),
        ("p hg 3 1\ne 1 2\ne 2 3\n", 3),
        ("p hg 3 2\ne 1 2\n", 1),
        ("c only a comment\n", 1),
        ("p hg 3 1\ne 1 ²\n", 2),
        ("p hg ³ 0\n", 1),
        ("p hg 3 1\ne 1 ٣\n", 2),
    ])
    def test_errors_carry_line_numbers(self, text, line_no):
        with pytest.raises(HypergraphParseError) as exc:
            parse_hypergraph(text)
        assert exc.value.line_no == line_no
        assert str(exc.value).startswith(f"line {line_no}:")

    def test_invalid_utf8(self):
        with pytest.raises(HypergraphParseError):
            parse_hypergraph(b"p hg 1 0\n\xff\n")

    def test_capacity_in_header(self):
        with pytest.raises(CapacityError):
            parse_hypergraph("p hg 200 0\n")


class TestEmitHypergraph:
    """Tests for emit_hypergraph() and the file helpers."""

    def test_canonical_form(self):
        h = parse_hypergraph("c hi\np hg 4 2\ne 3 1\ne 4 2 3\n")
        assert emit_hypergraph(h) == b"p hg 4 2\ne 1 3\ne 2 3 4\n"

    def test_zero_vertices(self):
        assert emit_hypergraph(Hypergraph(0, ())) == b"p hg 0 0\n"

    def test_reparse_is_identity(self):
        h = Hypergraph.from_edge_lists(5, [[4, 0], [1, 2, 3], [0, 1, 2, 3, 4]])
        assert parse_hypergraph(emit_hypergraph(h)) == h

    def test_file_helpers(self, tmp_path):
        h = Hypergraph.from_edge_lists(3, [[0, 2]])
        path = tmp_path / "h.hg"
        write_hypergraph(h, path)
        assert path.read_bytes() == b"p hg 3 1\ne 1 3\n"
        assert read_hypergraph(path) == h
