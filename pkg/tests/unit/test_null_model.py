"""Tests for degree-preserving randomization and the cross-region index."""

from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from costarnet import ConfigError, DegenerateNullError, PreconditionError
from costarnet._blocks import DyadBlockHelper
from costarnet._executor import ProcessPoolRunner, SerialRunner
from costarnet._seeding import derive_rng
from costarnet.graph import CollabNetwork, degree_sequence, make_attributes
from costarnet.null_model import (
    SwapConfig,
    SwapGraph,
    cross_region_index,
    cross_region_observed,
    double_edge_swap,
    null_counts,
    randomize,
    ratio_band,
)
from tests.conftest import random_network


def labeled_er_graph(rng: np.random.Generator, n: int, m: int) -> CollabNetwork:
    """G(n, m) graph with regions drawn independently of the edges."""
    i, j = DyadBlockHelper.dyads_in_rows(n, 0, n - 1)
    chosen = np.sort(rng.choice(len(i), size=m, replace=False))
    regions = rng.choice(["Mainland", "HongKong"], size=n)
    return CollabNetwork.from_edges(
        list(zip(i[chosen].tolist(), j[chosen].tolist())),
        attributes=[make_attributes(str(r)) for r in regions],  # type: ignore[arg-type]
    )


def check_degree_preservation(n_graphs: int, n_seeds: int, max_nodes: int) -> None:
    rng = np.random.default_rng(2024)
    for _ in range(n_graphs):
        n = int(rng.integers(4, max_nodes + 1))
        g = random_network(rng, n, float(rng.uniform(0.02, 0.4)))
        for seed in range(n_seeds):
            h = randomize(g, SwapConfig(seed=seed), derive_rng(seed, 0))
            assert degree_sequence(h) == degree_sequence(g)
            assert len(set(h.edges)) == h.n_edges
            assert all(u < v for u, v in h.edges)


def share_of_null_ratios(trials: int, replicates: int) -> float:
    inside = 0
    for trial in range(trials):
        g = labeled_er_graph(np.random.default_rng(trial), 200, 1000)
        cfg = SwapConfig(replicates=replicates, seed=trial)
        ratio = cross_region_index(g, "Mainland", "HongKong", cfg)["ratio"]
        inside += 0.9 <= ratio <= 1.1
    return inside / trials


class TestSwapConfig:
    """Tests for randomization settings."""

    def test_target_swaps(self) -> None:
        """Test the target rounds the multiplier times edge count up."""
        assert SwapConfig(swap_multiplier=1.5).target_swaps(3) == 5

    def test_invalid_multiplier(self) -> None:
        """Test a non-positive multiplier is a config error."""
        with pytest.raises(ConfigError):
            SwapConfig(swap_multiplier=0)

    def test_invalid_replicates(self) -> None:
        """Test zero replicates is a config error."""
        with pytest.raises(ConfigError):
            SwapConfig(replicates=0)


class TestRandomize:
    """Tests for degree-preserving double edge swaps."""

    def test_degree_preservation(self) -> None:
        """Test degrees and simplicity survive randomization."""
        check_degree_preservation(n_graphs=20, n_seeds=3, max_nodes=60)

    @pytest.mark.slow
    def test_degree_preservation_full(self) -> None:
        """Test 100 graphs up to 500 nodes with 10 seeds each."""
        check_degree_preservation(n_graphs=100, n_seeds=10, max_nodes=500)

    def test_attributes_kept(self, two_region_network: CollabNetwork) -> None:
        """Test nodes and attributes are untouched."""
        h = randomize(two_region_network, SwapConfig(), derive_rng(1, 0))
        assert h.star_ids == two_region_network.star_ids
        assert h.attributes == two_region_network.attributes

    def test_same_stream_same_result(self, two_region_network: CollabNetwork) -> None:
        """Test equal seeds give equal randomized networks."""
        first = randomize(two_region_network, SwapConfig(), derive_rng(5, 3))
        second = randomize(two_region_network, SwapConfig(), derive_rng(5, 3))
        assert first.edges == second.edges

    def test_too_few_edges(self) -> None:
        """Test a single edge cannot be swapped."""
        g = CollabNetwork.from_edges([(0, 1)], n=3)
        assert randomize(g, SwapConfig(), derive_rng(0, 0)).edges == ((0, 1),)

    def test_star_is_fixed(self) -> None:
        """Test a star graph admits no swap and comes back unchanged."""
        g = CollabNetwork.from_edges([(0, 1), (0, 2), (0, 3), (0, 4)])
        assert randomize(g, SwapConfig(), derive_rng(0, 0)).edges == g.edges

    def test_empty_graph(self) -> None:
        """Test an edgeless network stays edgeless."""
        g = CollabNetwork.from_edges([], n=5)
        assert randomize(g, SwapConfig(), derive_rng(0, 0)).n_edges == 0

    def test_random_graph_rewired(self) -> None:
        """Test a sparse random graph gets a different edge set."""
        g = labeled_er_graph(np.random.default_rng(0), 100, 300)
        h = randomize(g, SwapConfig(), derive_rng(0, 0))
        assert h.n_edges == 300
        assert set(h.edges) != set(g.edges)

    def test_count_successful_gives_up(
        self, triangle: CollabNetwork, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test success counting stops at the attempt cap when no swap is possible."""
        cfg = SwapConfig(count_successful=True)
        with caplog.at_level(logging.WARNING):
            h = randomize(triangle, cfg, derive_rng(0, 0))
        assert h.edges == triangle.edges
        assert "Only 0 of 6 swaps accepted" in caplog.text

    def test_count_successful_preserves_degrees(self, two_region_network: CollabNetwork) -> None:
        """Test success counting keeps the degree sequence."""
        cfg = SwapConfig(count_successful=True)
        h = randomize(two_region_network, cfg, derive_rng(0, 0))
        assert degree_sequence(h) == degree_sequence(two_region_network)

    def test_double_edge_swap_disjoint_edges(self) -> None:
        """Test two disjoint edges can always be rewired."""
        sg = SwapGraph(4, [(0, 1), (2, 3)])
        assert double_edge_swap(sg, np.random.default_rng(0))
        assert sg.degrees() == [1, 1, 1, 1]
        assert sorted(sg.canonical_edges()) != [(0, 1), (2, 3)]

    def test_four_cycle_swaps(self) -> None:
        """Test an accepted swap of a 4-cycle gives one of the two other 4-cycles."""
        cycle = [(0, 1), (1, 2), (2, 3), (0, 3)]
        others = [
            {(0, 2), (1, 2), (1, 3), (0, 3)},
            {(0, 1), (0, 2), (1, 3), (2, 3)},
        ]
        seen: set[frozenset[tuple[int, int]]] = set()
        for seed in range(200):
            sg = SwapGraph(4, cycle)
            if double_edge_swap(sg, np.random.default_rng(seed)):
                result = set(sg.canonical_edges())
                assert result in others
                assert sg.degrees() == [2, 2, 2, 2]
                seen.add(frozenset(result))
            else:
                assert sg.edges == cycle
        assert len(seen) == 2

    def test_triangle_rejects_every_pair(self) -> None:
        """Test no pair of triangle edges can be swapped in either orientation."""
        sg = SwapGraph(3, [(0, 1), (1, 2), (0, 2)])
        for first in range(3):
            for second in range(3):
                if first == second:
                    continue
                for flip in (False, True):
                    assert not sg.try_swap(first, second, flip)
        assert sg.edges == [(0, 1), (1, 2), (0, 2)]
        for seed in range(10):
            assert not double_edge_swap(sg, np.random.default_rng(seed))

    def test_swap_refused_on_shared_node(self) -> None:
        """Test edges sharing a node are never swapped."""
        sg = SwapGraph(3, [(0, 1), (1, 2)])
        assert not sg.try_swap(0, 1, False)
        assert not sg.try_swap(0, 1, True)
        assert sg.edges == [(0, 1), (1, 2)]


class TestCrossRegionIndex:
    """Tests for the observed-over-expected index."""

    def test_observed(self, two_region_network: CollabNetwork) -> None:
        """Test the cross-region edge count."""
        assert cross_region_observed(two_region_network, "Mainland", "HongKong") == 5

    @pytest.mark.parametrize(
        ("edges", "regions", "expected"),
        [
            ([(0, 1), (1, 2)], ["Mainland"] * 3, 0),
            ([(0, 2), (0, 3), (1, 2), (1, 3)], ["Mainland", "Mainland", "HongKong", "HongKong"], 4),
            ([(0, 1), (0, 2), (2, 3)], ["Mainland", "Mainland", "HongKong", "HongKong"], 1),
            ([(0, 1), (1, 2)], ["Mainland", "Taiwan", "HongKong"], 0),
        ],
    )
    def test_observed_small_graphs(
        self, edges: list[tuple[int, int]], regions: list[str], expected: int
    ) -> None:
        """Test only edges joining the two named regions are counted."""
        g = CollabNetwork.from_edges(edges, regions=regions)  # type: ignore[arg-type]
        assert cross_region_observed(g, "Mainland", "HongKong") == expected

    def test_planted_blocks(self) -> None:
        """Test two disconnected regional blocks give a ratio of zero."""
        edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        g = CollabNetwork.from_edges(edges, regions=["Mainland"] * 3 + ["HongKong"] * 3)
        result = cross_region_index(g, "Mainland", "HongKong", SwapConfig(replicates=50, seed=1))
        assert result["observed"] == 0
        assert result["expected"] > 0
        assert result["ratio"] == 0.0

    def test_band_from_ratio_percentiles(self) -> None:
        """Test the band interpolates the ratios, not the replicate counts."""
        low, high = ratio_band(10, np.array([10, 20]))
        assert low == pytest.approx(0.5125)
        assert high == pytest.approx(0.9875)

    def test_band_three_counts(self) -> None:
        """Test percentiles over ratios 1, 0.5 and 0.25."""
        low, high = ratio_band(4, np.array([4, 8, 16]))
        assert low == pytest.approx(0.25 + 0.05 * 0.25)
        assert high == pytest.approx(0.5 + 0.95 * 0.5)

    def test_band_zero_counts(self) -> None:
        """Test zero replicate counts give infinite ratios, or zero when nothing is observed."""
        assert ratio_band(3, np.array([0, 0, 0])) == (math.inf, math.inf)
        assert ratio_band(0, np.array([0, 5])) == (0.0, 0.0)
        low, high = ratio_band(3, np.array([0, 3, 3, 3]))
        assert low == 1.0
        assert high == math.inf

    def test_band_in_result(self, two_region_network: CollabNetwork) -> None:
        """Test the index reports the band of its own replicate counts."""
        cfg = SwapConfig(replicates=40, seed=2)
        result = cross_region_index(two_region_network, "Mainland", "HongKong", cfg)
        counts = null_counts(two_region_network, "Mainland", "HongKong", cfg)
        assert (result["ci_low"], result["ci_high"]) == ratio_band(result["observed"], counts)

    def test_same_region_rejected(self, two_region_network: CollabNetwork) -> None:
        """Test both regions must differ."""
        with pytest.raises(PreconditionError):
            cross_region_observed(two_region_network, "Mainland", "Mainland")

    def test_missing_region(self, triangle: CollabNetwork) -> None:
        """Test a network without one of the regions is a precondition failure."""
        with pytest.raises(PreconditionError):
            cross_region_index(triangle, "Mainland", "HongKong", SwapConfig(replicates=5))

    def test_degenerate_null(self) -> None:
        """Test a zero null expectation raises DegenerateNullError."""
        g = CollabNetwork.from_edges([(0, 1)], regions=["Mainland", "Mainland", "HongKong"])
        with pytest.raises(DegenerateNullError) as exc_info:
            cross_region_index(g, "Mainland", "HongKong", SwapConfig(replicates=5))
        assert exc_info.value.period == g.label

    def test_result_fields(self, two_region_network: CollabNetwork) -> None:
        """Test the result carries O, E, ratio and a band around it."""
        result = cross_region_index(
            two_region_network, "Mainland", "HongKong", SwapConfig(replicates=50, seed=3)
        )
        assert result["pair"] == "Mainland-HongKong"
        assert result["period"] == "1990-1993"
        assert result["observed"] == 5
        assert result["replicates"] == 50
        assert result["ratio"] == pytest.approx(5 / result["expected"])
        assert result["ci_low"] <= result["ci_high"]

    def test_deterministic(self, two_region_network: CollabNetwork) -> None:
        """Test repeated runs with one seed agree exactly."""
        cfg = SwapConfig(replicates=30, seed=11)
        first = cross_region_index(two_region_network, "Mainland", "HongKong", cfg)
        second = cross_region_index(two_region_network, "Mainland", "HongKong", cfg)
        assert first == second

    def test_workers_do_not_change_counts(self, two_region_network: CollabNetwork) -> None:
        """Test serial and pooled replicates give identical counts."""
        cfg = SwapConfig(replicates=24, seed=9)
        serial = null_counts(two_region_network, "Mainland", "HongKong", cfg, runner=SerialRunner())
        with ProcessPoolRunner(workers=3) as runner:
            pooled = null_counts(two_region_network, "Mainland", "HongKong", cfg, runner=runner)
        assert serial.tolist() == pooled.tolist()

    def test_region_relabeling_symmetry(self, two_region_network: CollabNetwork) -> None:
        """Test renaming a region leaves the index unchanged."""
        relabeled = two_region_network.with_attributes(
            [
                make_attributes("Taiwan" if a["region"] == "HongKong" else a["region"])
                for a in two_region_network.attributes
            ]
        )
        cfg = SwapConfig(replicates=20, seed=4)
        hk = cross_region_index(two_region_network, "Mainland", "HongKong", cfg)
        tw = cross_region_index(relabeled, "Mainland", "Taiwan", cfg)
        assert hk["ratio"] == tw["ratio"]

    def test_null_consistency(self) -> None:
        """Test region-independent graphs give ratios near one."""
        assert share_of_null_ratios(trials=10, replicates=20) >= 0.9

    @pytest.mark.slow
    def test_null_consistency_full(self) -> None:
        """Test 100 trials with 100 replicates each."""
        assert share_of_null_ratios(trials=100, replicates=100) >= 0.9
