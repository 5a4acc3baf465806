"""Tests for the synthetic dataset generator."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from costarnet import ConfigError
from costarnet.ingest import load_dataset, project
from costarnet.periods import make_period
from costarnet.synthetic import generate_dataset, write_dataset

if TYPE_CHECKING:
    from pathlib import Path

    from costarnet.ingest import Dataset


class TestGenerateDataset:
    """Tests for seeded synthetic data."""

    def test_seeded(self, synthetic_dataset: Dataset) -> None:
        """Test equal seeds give equal datasets."""
        again = generate_dataset(200, 1980, 2000, seed=7)
        assert again.stars == synthetic_dataset.stars
        assert again.cast == synthetic_dataset.cast

    def test_seed_matters(self, synthetic_dataset: Dataset) -> None:
        """Test a different seed gives different casts."""
        assert generate_dataset(200, 1980, 2000, seed=8).cast != synthetic_dataset.cast

    def test_works_in_range(self, synthetic_dataset: Dataset) -> None:
        """Test every work falls in the requested years."""
        years = {w["year"] for w in synthetic_dataset.works.values()}
        assert min(years) >= 1980
        assert max(years) <= 2000

    def test_old_cohort_present(self, synthetic_dataset: Dataset) -> None:
        """Test some stars debut before the first generated year."""
        assert any(s["first_work_year"] < 1980 for s in synthetic_dataset.stars.values())  # type: ignore[operator]

    def test_homophily(self) -> None:
        """Test full homophily yields more within-region edges than none."""
        period = make_period(1990, 1994)
        regions = ["Mainland", "HongKong", "Taiwan"]

        def within_share(homophily: float) -> float:
            g = project(generate_dataset(200, 1985, 1995, seed=3, homophily=homophily), period, regions)
            values = g.attribute_values("region")
            return sum(values[u] == values[v] for u, v in g.edges) / g.n_edges

        assert within_share(1.0) > within_share(0.0)

    @pytest.mark.parametrize(
        "kwargs",
        [{"n_stars": 1}, {"start_year": 2000, "end_year": 1990}, {"homophily": -0.1}],
    )
    def test_invalid(self, kwargs: dict[str, float]) -> None:
        """Test invalid settings are config errors."""
        with pytest.raises(ConfigError):
            generate_dataset(**kwargs)  # type: ignore[arg-type]

    def test_written_files_load(self, synthetic_dataset: Dataset, tmp_path: Path) -> None:
        """Test the written CSVs load back into the same records."""
        paths = write_dataset(synthetic_dataset, tmp_path)
        assert [p.name for p in paths] == ["stars.csv", "works.csv", "cast.csv"]
        loaded = load_dataset(*paths)
        assert loaded.stars == synthetic_dataset.stars
        assert loaded.works == synthetic_dataset.works
