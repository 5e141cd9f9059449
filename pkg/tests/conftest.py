"""Shared fixtures."""

import pytest

from kneser_defects import set_default_budget
from kneser_defects.hypergraph import Hypergraph


@pytest.fixture(autouse=True)
def clear_budget_override():
    """The CLI --budget flag sets a process-wide override; never leak it between tests."""
    set_default_budget(None)
    yield
    set_default_budget(None)


@pytest.fixture
def fano() -> Hypergraph:
    """The Fano plane: 7 points, 7 lines of size 3."""
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return Hypergraph.from_edge_lists(7, lines)
