"""Unit tests for the lead/lag minimum spanning tree."""

import math

import pytest

from tick_leadlag.hycorr import LagGrid
from tick_leadlag.network import (
    NetworkError,
    PairSummary,
    build_mst,
    correlation_distance,
    graph_to_gml,
    summarize_pairs,
)
from tick_leadlag.simkit import SimConfig, synthetic_days


def _triangle(ac_llr=0.5):
    return [
        PairSummary("A", "B", 0.9, 2.0),
        PairSummary("C", "A", 0.8, ac_llr),
        PairSummary("B", "C", 0.1, 1.5),
    ]


def _edges(graph):
    return {(e.source, e.target) for e in graph.edges}


class TestDistance:
    """Tests for the correlation distance."""

    def test_values(self):
        assert correlation_distance(1.0) == 0.0
        assert correlation_distance(0.0) == pytest.approx(math.sqrt(2))
        assert correlation_distance(-1.0) == pytest.approx(2.0)

    def test_clamped_above_one(self):
        assert correlation_distance(1.0 + 1e-12) == 0.0


class TestBuildMST:
    """Tests for tree selection and edge orientation."""

    def test_keeps_two_strongest_edges(self):
        graph = build_mst(_triangle())
        assert graph.nodes == ["A", "B", "C"]
        assert _edges(graph) == {("A", "B"), ("A", "C")}

    def test_llr_below_one_reverses_edge(self):
        graph = build_mst(_triangle(ac_llr=0.5))
        edge = next(e for e in graph.edges if {e.source, e.target} == {"A", "C"})
        assert (edge.source, edge.target) == ("A", "C")
        assert edge.llr == pytest.approx(2.0)

        graph = build_mst(_triangle(ac_llr=4.0))
        edge = next(e for e in graph.edges if {e.source, e.target} == {"A", "C"})
        assert (edge.source, edge.target) == ("C", "A")
        assert edge.llr == pytest.approx(4.0)

    def test_unit_llr_is_undirected(self):
        graph = build_mst(_triangle(ac_llr=1.0))
        edge = next(e for e in graph.edges if {e.source, e.target} == {"A", "C"})
        assert not edge.directed
        assert (edge.source, edge.target) == ("A", "C")

    def test_zero_llr_points_at_first_leg(self):
        graph = build_mst(_triangle(ac_llr=0.0))
        edge = next(e for e in graph.edges if {e.source, e.target} == {"A", "C"})
        assert (edge.source, edge.target) == ("A", "C")
        assert edge.llr == math.inf
        assert edge.directed
        assert "INF" in graph_to_gml(graph)

    def test_nan_llr_is_undirected(self):
        graph = build_mst(_triangle(ac_llr=math.nan))
        edge = next(e for e in graph.edges if {e.source, e.target} == {"A", "C"})
        assert not edge.directed

    def test_monotone_distance_gives_same_tree(self):
        a = build_mst(_triangle())
        b = build_mst(_triangle(), distance=lambda rho: 2.0 * (1.0 - rho))
        assert _edges(a) == _edges(b)

    def test_missing_pair(self):
        with pytest.raises(NetworkError) as exc:
            build_mst(_triangle()[:2])
        assert exc.value.missing == [("B", "C")]

    def test_extra_node_is_missing(self):
        with pytest.raises(NetworkError):
            build_mst(_triangle(), nodes=["A", "B", "C", "D"])

    def test_needs_two_nodes(self):
        with pytest.raises(ValueError):
            build_mst([], nodes=["A"])

    def test_exports(self):
        graph = build_mst(_triangle())
        frame = graph.edges_frame()
        assert list(frame.columns) == ["from", "to", "rho", "llr", "directed"]
        assert len(frame) == 2
        gml = graph_to_gml(graph)
        assert gml.startswith("graph [")
        assert "directed 1" in gml


class TestSummarizePairs:
    """Tests for pairwise summaries."""

    def test_pairs_in_lexicographic_order(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.5, T=600.0, seed=4)
        xs, ys = synthetic_days(cfg, 2, lag_d=1.0)
        grid = LagGrid.from_positive([0.5, 1.0, 2.0, 5.0])
        pairs = summarize_pairs({"ZZ.Y": ys, "AA.X": xs}, grid, correlation="rho0")
        assert len(pairs) == 1
        assert (pairs[0].x, pairs[0].y) == ("AA.X", "ZZ.Y")
        assert -1.0 <= pairs[0].rho <= 1.0

    def test_unknown_correlation(self):
        with pytest.raises(ValueError):
            summarize_pairs({}, correlation="spearman")
