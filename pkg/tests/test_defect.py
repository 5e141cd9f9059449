"""Tests for the exact colorability defect solvers."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_defects import DomainError, UsageError
from kneser_defects.constructions import Thm2Params, Thm3Params, complete_uniform, thm2_family, thm3_family
from kneser_defects.defect import (
    DefectCertificate,
    cd_exact,
    certificate_from_json,
    certificate_to_json,
    defect_profile,
    ecd_exact,
    part_admissible,
    verify_certificate,
)
from kneser_defects.hypergraph import Hypergraph, VertexSet
from tests.oracles import brute_defect
from tests.strategies import small_hypergraphs


def cert(width, x0, *parts, equitable=False):
    return DefectCertificate(
        VertexSet.from_indices(width, x0),
        tuple(VertexSet.from_indices(width, p) for p in parts),
        equitable,
    )


class TestPartAdmissible:
    """Tests for part_admissible()."""

    def test_threshold_zero(self):
        f = Hypergraph.from_edge_lists(3, [[0, 1, 2]])
        assert part_admissible(f, 0, VertexSet.from_indices(3, [0, 1]))
        assert not part_admissible(f, 0, VertexSet.full(3))

    def test_threshold_one(self):
        f = Hypergraph.from_edge_lists(3, [[0, 1, 2]])
        assert part_admissible(f, 1, VertexSet.from_indices(3, [2]))
        assert not part_admissible(f, 1, VertexSet.from_indices(3, [0, 1]))


class TestVerifyCertificate:
    """Tests for verify_certificate()."""

    @pytest.fixture
    def path(self):
        return Hypergraph.from_edge_lists(4, [[0, 1], [1, 2], [2, 3]])

    def test_valid(self, path):
        assert verify_certificate(path, 0, cert(4, [], [0, 2], [1, 3]))

    def test_overlap(self, path):
        assert not verify_certificate(path, 0, cert(4, [0], [0, 2], [1, 3]))

    def test_missing_vertex(self, path):
        assert not verify_certificate(path, 0, cert(4, [], [0, 2], [1]))

    def test_inadmissible_part(self, path):
        assert not verify_certificate(path, 0, cert(4, [], [0, 1], [2, 3]))

    def test_unbalanced_equitable(self, path):
        c = cert(4, [3], [0, 2], [1], equitable=True)
        assert verify_certificate(path, 0, c)
        unbalanced = cert(4, [1, 2], [0, 3], [], equitable=True)
        assert not verify_certificate(path, 0, unbalanced)
        assert verify_certificate(path, 0, cert(4, [1, 2], [0, 3], []))

    def test_width_mismatch(self, path):
        with pytest.raises(UsageError):
            verify_certificate(path, 0, cert(5, [4], [0, 2], [1, 3]))

    def test_threshold_too_large(self, path):
        with pytest.raises(DomainError):
            verify_certificate(path, 2, cert(4, [0, 1, 2, 3], [], []))


class TestCertificateJson:
    """Tests for certificate_to_json() / certificate_from_json()."""

    def test_one_based_lists(self):
        c = cert(5, [4], [0, 2], [1, 3], equitable=True)
        assert certificate_to_json(c, 2, 1) == {
            "value": 1,
            "x0": [5],
            "parts": [[1, 3], [2, 4]],
            "equitable": True,
            "threshold_s": 1,
            "r": 2,
        }

    def test_reads_back(self):
        c = cert(5, [4], [0, 2], [1, 3], equitable=True)
        assert certificate_from_json(certificate_to_json(c, 2, 1), 5) == c

    def test_r_mismatch(self):
        with pytest.raises(UsageError):
            certificate_to_json(cert(3, [], [0], [1, 2]), 3, 0)
        with pytest.raises(UsageError):
            certificate_from_json({"x0": [], "parts": [[1]], "r": 2}, 3)

    def test_malformed(self):
        with pytest.raises(UsageError):
            certificate_from_json({"parts": []}, 3)


class TestCdExact:
    """Tests for cd_exact()."""

    def test_complete_graph(self):
        result = cd_exact(complete_uniform(5, 2), 2, 0)
        assert result.value == 3
        assert result.conclusive
        assert verify_certificate(complete_uniform(5, 2), 0, result.certificate)
        assert result.certificate.value == 3

    def test_disjoint_blocks_at_full_threshold(self):
        f = thm3_family(Thm3Params(k=2, s=2))
        result = cd_exact(f, 2, 2)
        assert result.value == 6
        assert result.certificate.x0 == VertexSet.full(6)

    def test_disjoint_blocks_below_full_threshold(self):
        f = thm3_family(Thm3Params(k=2, s=4))
        assert cd_exact(f, 2, 3).value == 2 * (2 * 3 - 4 + 1)

    def test_fano(self, fano):
        result = cd_exact(fano, 2, 0)
        assert result.value == brute_defect(fano, 2, 0)
        assert verify_certificate(fano, 0, result.certificate)

    def test_no_edges(self):
        result = cd_exact(Hypergraph(4, ()), 2, 0)
        assert result.value == 0

    def test_no_vertices(self):
        assert cd_exact(Hypergraph(0, ()), 2, 0).value == 0

    def test_r_too_small(self):
        with pytest.raises(DomainError):
            cd_exact(complete_uniform(3, 2), 1, 0)

    def test_threshold_error(self):
        with pytest.raises(DomainError):
            cd_exact(complete_uniform(3, 2), 2, 2)

    def test_budget_exhaustion_is_inconclusive(self):
        f = complete_uniform(5, 2)
        result = cd_exact(f, 2, 0, budget=1)
        assert result.value is None
        assert not result.conclusive
        assert result.lower_bound <= 3 <= result.upper_bound
        assert verify_certificate(f, 0, result.certificate)

    def test_to_json(self):
        obj = cd_exact(complete_uniform(5, 2), 2, 0).to_json()
        assert obj["value"] == 3
        assert obj["deterministic"] is True
        assert obj["certificate"]["threshold_s"] == 0
        assert len(obj["certificate"]["parts"]) == 2

    def test_counts_bound_prunes(self):
        result = cd_exact(complete_uniform(5, 2), 2, 0)
        assert result.prunes > 0
        assert result.to_json()["prunes"] == result.prunes

    def test_no_prunes_without_search(self):
        assert cd_exact(Hypergraph(3, ()), 2, 0).prunes == 0

    def test_deterministic(self, fano):
        assert cd_exact(fano, 3, 1) == cd_exact(fano, 3, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.data(), st.integers(2, 3), st.integers(0, 1))
    def test_matches_brute_force(self, data, r, s):
        f = data.draw(small_hypergraphs(max_n=7, max_edges=6, min_size=s + 1))
        result = cd_exact(f, r, s)
        assert result.value == brute_defect(f, r, s)
        assert verify_certificate(f, s, result.certificate)


class TestEcdExact:
    """Tests for ecd_exact()."""

    def test_tail_extended_family(self):
        f = thm2_family(Thm2Params(l=2, s=1, n=2))
        result = ecd_exact(f, 2, 1)
        assert result.value == 3
        assert result.certificate.equitable
        assert verify_certificate(f, 1, result.certificate)

    def test_complete_graph(self):
        assert ecd_exact(complete_uniform(5, 2), 2, 0).value == 3

    def test_star(self):
        star = Hypergraph.from_edge_lists(4, [[0, 1], [0, 2], [0, 3]])
        assert cd_exact(star, 3, 0).value == 0
        assert ecd_exact(star, 2, 0).value == brute_defect(star, 2, 0, equitable=True)

    def test_no_edges_spreads_vertices(self):
        result = ecd_exact(Hypergraph(5, ()), 2, 0)
        assert result.value == 0
        assert sorted(result.certificate.part_sizes()) == [2, 3]

    @settings(max_examples=60, deadline=None)
    @given(st.data(), st.integers(2, 3), st.integers(0, 1))
    def test_matches_brute_force(self, data, r, s):
        f = data.draw(small_hypergraphs(max_n=7, max_edges=6, min_size=s + 1))
        result = ecd_exact(f, r, s)
        assert result.value == brute_defect(f, r, s, equitable=True)
        assert result.value >= cd_exact(f, r, s).value
        assert verify_certificate(f, s, result.certificate)


class TestDefectProfile:
    """Tests for defect_profile()."""

    def test_every_legal_threshold(self):
        f = thm3_family(Thm3Params(k=1, s=4))
        profile = defect_profile(f, 2)
        assert [res.s for res in profile] == [0, 1, 2, 3, 4]
        values = [res.value for res in profile]
        assert values == sorted(values)
        assert values[3:] == [3, 5]

    def test_equitable(self):
        profile = defect_profile(complete_uniform(4, 3), 2, equitable=True)
        assert all(res.equitable for res in profile)
        assert len(profile) == 3
