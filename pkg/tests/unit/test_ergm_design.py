"""Tests for the dyad-level design matrix."""

from __future__ import annotations

import numpy as np
import pytest

from costarnet import SizeGuardError
from costarnet.ergm import (
    DyadRow,
    Edges,
    NodeCov,
    NodeMatch,
    build_design,
    change_statistics,
)
from costarnet.graph import CollabNetwork

TERMS = [Edges(), NodeMatch("region"), NodeCov("prev_cooperation_count")]


class TestBuildDesign:
    """Tests for rows, responses and blocks."""

    def test_row_count(self) -> None:
        """Test one row per dyad."""
        design = build_design(CollabNetwork.from_edges([(0, 1)], n=4), [Edges()])
        assert len(design) == 6
        assert len(list(design)) == 6

    def test_empty_graph(self) -> None:
        """Test an empty graph has only absent responses."""
        design = build_design(CollabNetwork.from_edges([], n=5), [Edges()])
        assert not any(row.response for row in design)

    def test_complete_graph(self, triangle: CollabNetwork) -> None:
        """Test a triangle has three present responses."""
        assert [row.response for row in build_design(triangle, [Edges()])] == [True] * 3

    def test_rows_follow_lexicographic_order(self, two_region_network: CollabNetwork) -> None:
        """Test rows carry their dyad, response and change statistics."""
        design = build_design(two_region_network, TERMS)
        rows = list(design)
        assert [(r.i, r.j) for r in rows[:3]] == [(0, 1), (0, 2), (0, 3)]
        assert sum(r.response for r in rows) == two_region_network.n_edges
        for row in rows:
            expected = change_statistics(two_region_network, TERMS, (row.i, row.j))
            assert np.allclose(row.covariates, expected)
            assert row.response == two_region_network.has_edge(row.i, row.j)

    def test_indexing_matches_iteration(self, two_region_network: CollabNetwork) -> None:
        """Test random access agrees with iteration."""
        design = build_design(two_region_network, TERMS)
        rows = list(design)
        assert design[5] == rows[5]
        assert design[-1] == rows[-1]
        assert design[2:4] == rows[2:4]
        assert isinstance(design[0], DyadRow)
        with pytest.raises(IndexError):
            design[28]

    @pytest.mark.parametrize("block_dyads", [1, 5, 13, 1000])
    def test_blocks_concatenate_to_matrix(
        self, two_region_network: CollabNetwork, block_dyads: int
    ) -> None:
        """Test any block size covers the same rows in the same order."""
        whole_x, whole_y = build_design(two_region_network, TERMS).matrix()
        design = build_design(two_region_network, TERMS, block_dyads=block_dyads)
        xs, ys = zip(*design.blocks())
        assert np.array_equal(np.vstack(xs), whole_x)
        assert np.array_equal(np.concatenate(ys), whole_y)

    def test_dyad_cap(self, two_region_network: CollabNetwork) -> None:
        """Test networks above the cap are refused."""
        with pytest.raises(SizeGuardError):
            build_design(two_region_network, TERMS, dyad_cap=27)

    def test_cap_read_at_call_time(
        self, two_region_network: CollabNetwork, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test a changed module-level cap applies to later calls."""
        monkeypatch.setattr("costarnet._config.dyad_cap", 27)
        with pytest.raises(SizeGuardError) as exc_info:
            build_design(two_region_network, TERMS)
        assert exc_info.value.limit == 27

    def test_block_size_read_at_call_time(
        self, two_region_network: CollabNetwork, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test a changed module-level block size applies to later designs."""
        monkeypatch.setattr("costarnet._config.dyad_block", 5)
        design = build_design(two_region_network, TERMS)
        assert len(design.bounds) > 1
        assert design.bounds == build_design(two_region_network, TERMS, block_dyads=5).bounds
