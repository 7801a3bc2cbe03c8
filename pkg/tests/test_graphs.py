"""Row-stochastic graph construction, ring/circulant specs, and file loaders."""

from __future__ import annotations

import numpy as np
import pytest

from fjpower import (
    CirculantSpec,
    RingSpec,
    StochasticGraph,
    build_circulant,
    build_symmetric_ring,
    is_strongly_connected,
    load_edge_list,
    load_matrix,
    normalize_adjacency,
    save_matrix,
    validate_stochastic,
)
from fjpower.errors import (
    EdgeListParseError,
    NegativeEntryError,
    NonStochasticError,
    NotNormalizedError,
    ZeroOutDegreeError,
)

from conftest import random_instance


class TestStochasticGraph:
    def test_accepts_row_stochastic(self):
        g = StochasticGraph(np.array([[0.5, 0.5], [0.25, 0.75]]))
        assert g.n == 2
        assert g.weights.flags.writeable is False

    def test_rejects_bad_row_sum(self):
        with pytest.raises(NonStochasticError):
            StochasticGraph(np.array([[0.5, 0.4], [0.5, 0.5]]))

    def test_rejects_negative(self):
        with pytest.raises(NegativeEntryError):
            StochasticGraph(np.array([[1.5, -0.5], [0.5, 0.5]]))

    def test_rejects_nonfinite(self):
        with pytest.raises(NonStochasticError):
            StochasticGraph(np.array([[np.nan, 1.0], [0.5, 0.5]]))

    def test_rejects_nonsquare(self):
        with pytest.raises(NonStochasticError):
            StochasticGraph(np.ones((2, 3)) / 3.0)

    def test_does_not_alias_caller_array(self):
        w = np.array([[0.0, 1.0], [1.0, 0.0]])
        g = StochasticGraph(w)
        w[0, 0] = 5.0
        assert g.weights[0, 0] == 0.0

    def test_validate_stochastic_equivalent(self):
        g = validate_stochastic([[0.0, 1.0], [1.0, 0.0]])
        assert isinstance(g, StochasticGraph)


class TestConnectivity:
    def test_cycle_is_strong(self):
        g = normalize_adjacency(np.roll(np.eye(4), 1, axis=1))
        assert is_strongly_connected(g)

    def test_sink_component_is_not_strong(self):
        # 0 -> 1 but never back
        w = np.array([[0.5, 0.5], [0.0, 1.0]])
        assert not is_strongly_connected(StochasticGraph(w))

    def test_random_backbone_instances_are_strong(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            assert is_strongly_connected(random_instance(rng, 6))


class TestNormalizeAdjacency:
    def test_rows_sum_to_one(self):
        adj = np.array([[0.0, 2.0, 2.0], [1.0, 0.0, 0.0], [3.0, 1.0, 0.0]])
        g = normalize_adjacency(adj)
        np.testing.assert_allclose(g.weights.sum(axis=1), 1.0, atol=1e-15)
        np.testing.assert_allclose(g.weights[0], [0.0, 0.5, 0.5])

    def test_zero_out_degree_rejected(self):
        with pytest.raises(ZeroOutDegreeError):
            normalize_adjacency(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_negative_rejected(self):
        with pytest.raises(NegativeEntryError):
            normalize_adjacency(np.array([[0.0, -1.0], [1.0, 0.0]]))


class TestCirculantSpec:
    def test_rows_are_cyclic_shifts(self):
        spec = CirculantSpec((0.2, 0.5, 0.3))
        w = build_circulant(spec)
        np.testing.assert_allclose(w[1], np.roll(w[0], 1))
        np.testing.assert_allclose(w[2], np.roll(w[0], 2))
        StochasticGraph(w)  # row-stochastic by construction

    def test_rejects_bad_sum(self):
        with pytest.raises(NotNormalizedError):
            CirculantSpec((0.2, 0.5))

    def test_rejects_negative(self):
        with pytest.raises(NegativeEntryError):
            CirculantSpec((1.2, -0.2))


class TestRingSpec:
    def test_odd_generator_palindromic(self):
        # n = 2s - 1 = 7 takes s = 4 half weights
        spec = RingSpec(7, (0.4, 0.2, 0.05, 0.05))
        gen = np.asarray(spec.generator())
        assert gen.size == 7
        np.testing.assert_allclose(gen[1:], gen[1:][::-1])
        assert abs(gen.sum() - 1.0) < 1e-12

    def test_even_generator_palindromic(self):
        # n = 2s = 8 takes s + 1 = 5 half weights; the antipode appears once
        spec = RingSpec(8, (0.3, 0.2, 0.1, 0.05, 0.0))
        gen = np.asarray(spec.generator())
        assert gen.size == 8
        np.testing.assert_allclose(gen[1:], gen[1:][::-1])
        assert abs(gen.sum() - 1.0) < 1e-12

    def test_wrong_half_length_rejected(self):
        with pytest.raises(NotNormalizedError):
            RingSpec(7, (0.4, 0.2, 0.05))

    def test_build_symmetric_ring_matches_circulant(self):
        spec = RingSpec(6, (0.3, 0.2, 0.1, 0.1))
        g = build_symmetric_ring(spec)
        np.testing.assert_allclose(g.weights, build_circulant(spec.circulant()))
        np.testing.assert_allclose(g.weights, g.weights.T)  # symmetric ring


class TestEdgeList:
    def test_undirected_mirrors(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0 1\n1 2 2.0\n2 0\n")
        g = load_edge_list(p)
        assert g.n == 3
        # row 1 saw weights 1 (to 0) and 2 (to 2)
        np.testing.assert_allclose(g.weights[1], [1 / 3, 0.0, 2 / 3])

    def test_directed_and_duplicates_accumulate(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0 1 1.0\n0 1 1.0\n0 2 2.0\n1 0\n2 0\n")
        g = load_edge_list(p, directed=True)
        np.testing.assert_allclose(g.weights[0], [0.0, 0.5, 0.5])

    def test_header_declares_one_based(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("# base=1\n1 2\n2 1\n")
        g = load_edge_list(p, directed=True, header=True)
        assert g.n == 2
        np.testing.assert_allclose(g.weights, [[0.0, 1.0], [1.0, 0.0]])

    def test_comma_separated(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0,1,1.5\n1,0,0.5\n")
        g = load_edge_list(p, directed=True)
        np.testing.assert_allclose(g.weights, [[0.0, 1.0], [1.0, 0.0]])

    def test_bad_header_rejected(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("base=2\n0 1\n1 0\n")
        with pytest.raises(EdgeListParseError):
            load_edge_list(p, header=True)

    def test_bad_line_rejected(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0 1 2 3\n")
        with pytest.raises(EdgeListParseError):
            load_edge_list(p)

    def test_negative_weight_rejected(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0 1 -2\n")
        with pytest.raises(EdgeListParseError):
            load_edge_list(p)

    def test_isolated_node_rejected(self, tmp_path):
        # node 1 exists only as a target: zero out-degree after assembly
        p = tmp_path / "g.txt"
        p.write_text("0 1\n0 2\n2 0\n")
        with pytest.raises(ZeroOutDegreeError):
            load_edge_list(p, directed=True)


class TestMatrixIO:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(3)
        g = random_instance(rng, 5)
        p = tmp_path / "w.txt"
        save_matrix(g, p)
        g2 = load_matrix(p)
        np.testing.assert_allclose(g2.weights, g.weights, atol=0, rtol=0)

    def test_size_line_required(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("0 1\n1 0\n")
        with pytest.raises(EdgeListParseError):
            load_matrix(p)

    def test_wrong_row_count_rejected(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("3\n0 1 0\n1 0 0\n")
        with pytest.raises(EdgeListParseError):
            load_matrix(p)
