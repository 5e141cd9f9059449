"""Tests for the exact weak chromatic number solver."""

import pytest
from hypothesis import given, settings

from kneser_defects import DomainError, UsageError
from kneser_defects.chromatic import (
    Coloring,
    chromatic_number_exact,
    clique_lower_bound,
    greedy_upper_bound,
    is_proper_coloring,
)
from kneser_defects.constructions import complete_uniform
from kneser_defects.hypergraph import Hypergraph
from kneser_defects.kneser import KneserSpec, build_kneser
from tests.oracles import brute_chi
from tests.strategies import small_hypergraphs


@pytest.fixture
def petersen() -> Hypergraph:
    return build_kneser(complete_uniform(5, 2), KneserSpec(r=2, s=0))


class TestColoring:
    """Tests for Coloring validation."""

    def test_color_outside_palette(self):
        with pytest.raises(UsageError):
            Coloring((0, 2), 2)

    def test_n_used(self):
        assert Coloring((0, 0, 2), 3).n_used == 2


class TestIsProperColoring:
    """Tests for is_proper_coloring()."""

    def test_monochromatic_edge(self):
        h = Hypergraph.from_edge_lists(3, [[0, 1, 2]])
        assert not is_proper_coloring(h, Coloring((1, 1, 1), 2))
        assert is_proper_coloring(h, Coloring((1, 1, 0), 2))

    def test_length_mismatch(self):
        with pytest.raises(UsageError):
            is_proper_coloring(Hypergraph(3, ()), Coloring((0, 0), 1))


class TestGreedyUpperBound:
    """Tests for greedy_upper_bound()."""

    def test_proper(self, petersen):
        c = greedy_upper_bound(petersen)
        assert is_proper_coloring(petersen, c)
        assert c.palette_size >= 3

    def test_singleton_edge(self):
        with pytest.raises(DomainError):
            greedy_upper_bound(Hypergraph.from_edge_lists(2, [[0]]))


class TestCliqueLowerBound:
    """Tests for clique_lower_bound()."""

    def test_complete_graph(self):
        assert clique_lower_bound(complete_uniform(4, 2)) == 4

    def test_wider_edges_give_two(self, fano):
        assert clique_lower_bound(fano) == 2


class TestChromaticNumberExact:
    """Tests for chromatic_number_exact()."""

    def test_petersen(self, petersen):
        result = chromatic_number_exact(petersen)
        assert result.chi == 3
        assert result.conclusive
        assert result.witness.palette_size == 3
        assert is_proper_coloring(petersen, result.witness)

    def test_fano_is_not_two_colorable(self, fano):
        result = chromatic_number_exact(fano)
        assert result.chi == 3
        assert is_proper_coloring(fano, result.witness)

    def test_complete_graph(self):
        assert chromatic_number_exact(complete_uniform(5, 2)).chi == 5

    def test_no_vertices(self):
        result = chromatic_number_exact(Hypergraph(0, ()))
        assert result.chi == 0
        assert result.witness.colors == ()

    def test_no_edges(self):
        result = chromatic_number_exact(Hypergraph(4, ()))
        assert result.chi == 1
        assert result.witness.colors == (0, 0, 0, 0)

    def test_single_edge(self):
        assert chromatic_number_exact(Hypergraph.from_edge_lists(3, [[0, 1, 2]])).chi == 2

    def test_singleton_edge(self):
        with pytest.raises(DomainError):
            chromatic_number_exact(Hypergraph.from_edge_lists(2, [[0], [0, 1]]))

    def test_budget_exhaustion_is_inconclusive(self, petersen):
        result = chromatic_number_exact(petersen, budget=1)
        assert result.chi is None
        assert not result.conclusive
        assert result.lower_bound == 2
        assert result.upper_bound >= 3
        assert is_proper_coloring(petersen, result.witness)

    def test_deterministic_witness(self, fano):
        assert chromatic_number_exact(fano) == chromatic_number_exact(fano)

    def test_to_json(self, petersen):
        obj = chromatic_number_exact(petersen).to_json()
        assert obj["chi"] == 3
        assert obj["conclusive"] is True
        assert obj["witness"]["palette_size"] == 3
        assert len(obj["witness"]["colors"]) == 10

    def test_counts_forward_check_prunes(self, petersen):
        result = chromatic_number_exact(petersen)
        assert result.prunes > 0
        assert result.to_json()["prunes"] == result.prunes

    @settings(max_examples=40, deadline=None)
    @given(small_hypergraphs(max_n=7, max_edges=6, min_size=2))
    def test_matches_brute_force(self, h):
        result = chromatic_number_exact(h)
        assert result.chi == brute_chi(h)
        assert is_proper_coloring(h, result.witness)
