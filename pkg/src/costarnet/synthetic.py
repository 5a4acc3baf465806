"""Seeded synthetic star/work/cast datasets."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from ._config import DEFAULT_SEED
from ._exceptions import ConfigError
from ._tables import write_table
from .ingest import CAST_COLUMNS, STAR_COLUMNS, WORK_COLUMNS, Dataset

if TYPE_CHECKING:
    from .types.common import Region
    from .types.records import CastRecord, StarRecord, WorkRecord

logger = logging.getLogger(__name__)

SYNTHETIC_REGIONS: tuple[Region, ...] = ("Mainland", "HongKong", "Taiwan", "Other")
SYNTHETIC_REGION_WEIGHTS = (0.60, 0.25, 0.12, 0.03)


def generate_dataset(
    n_stars: int = 500,
    start_year: int = 1980,
    end_year: int = 2014,
    *,
    seed: int = DEFAULT_SEED,
    homophily: float = 0.8,
    works_per_year: int | None = None,
    missing_birth_share: float = 0.1,
) -> Dataset:
    """Generate a dataset whose casting favours same-region stars.

    Each work picks a home region (weighted by region size); each cast slot
    is drawn from the home region's active stars with probability
    ``homophily`` and from all active stars otherwise. A star is active
    from its debut year, recorded as ``first_work_year``, for a random
    career length; debuts start up to 20 years before ``start_year``.

    Args:
        n_stars: Number of stars
        start_year: First year with works
        end_year: Last year with works
        seed: Random seed; equal seeds give equal datasets
        homophily: Probability of drawing a cast slot from the home region
        works_per_year: Works per year (default ``n_stars // 6``)
        missing_birth_share: Share of stars without a birth year

    Returns:
        A validated :class:`Dataset`.
    """
    if n_stars < 2:
        raise ConfigError(f"Need at least 2 stars, got {n_stars}")
    if start_year > end_year:
        raise ConfigError(f"start_year {start_year} is after end_year {end_year}")
    if not 0.0 <= homophily <= 1.0:
        raise ConfigError(f"homophily must lie in [0, 1], got {homophily}")

    rng = np.random.default_rng(seed)
    per_year = works_per_year if works_per_year is not None else max(1, n_stars // 6)

    region_idx = rng.choice(len(SYNTHETIC_REGIONS), size=n_stars, p=SYNTHETIC_REGION_WEIGHTS)
    debut = rng.integers(start_year - 20, end_year, size=n_stars)
    career = rng.integers(8, 41, size=n_stars)
    debut_age = rng.integers(16, 36, size=n_stars)
    birth_known = rng.random(n_stars) >= missing_birth_share

    stars: list[StarRecord] = []
    for i in range(n_stars):
        stars.append(
            {
                "star_id": f"s{i:04d}",
                "name": f"Star {i}",
                "region": SYNTHETIC_REGIONS[region_idx[i]],
                "birth_year": int(debut[i] - debut_age[i]) if birth_known[i] else None,
                "first_work_year": int(debut[i]),
            }
        )

    works: list[WorkRecord] = []
    cast: list[CastRecord] = []
    home_weights = np.asarray(SYNTHETIC_REGION_WEIGHTS[:3]) / sum(SYNTHETIC_REGION_WEIGHTS[:3])
    for year in range(start_year, end_year + 1):
        active = np.flatnonzero((debut <= year) & (year <= debut + career))
        if active.size < 2:
            continue
        for _ in range(per_year):
            home = int(rng.choice(3, p=home_weights))
            local = active[region_idx[active] == home]
            size = min(int(2 + rng.poisson(3.0)), 12, active.size)
            chosen: list[int] = []
            while len(chosen) < size:
                pool = local if local.size and rng.random() < homophily else active
                pool = np.setdiff1d(pool, chosen)
                if pool.size == 0:
                    pool = np.setdiff1d(active, chosen)
                chosen.append(int(pool[rng.integers(pool.size)]))
            work_id = f"w{len(works):05d}"
            works.append(
                {
                    "work_id": work_id,
                    "title": f"Work {len(works)}",
                    "year": year,
                    "kind": "movie" if rng.random() < 0.5 else "tv",
                }
            )
            cast.extend({"work_id": work_id, "star_id": stars[c]["star_id"]} for c in chosen)

    dataset = Dataset.from_records(stars, works, cast)
    logger.info(
        "Generated %d stars, %d works, %d cast rows (seed=%d)",
        len(dataset.stars),
        len(dataset.works),
        len(dataset.cast),
        seed,
    )
    return dataset


def write_dataset(ds: Dataset, directory: str | Path) -> tuple[Path, Path, Path]:
    """Write ``stars.csv``, ``works.csv`` and ``cast.csv`` into ``directory``.

    Missing optional years are written as empty fields.
    """
    directory = Path(directory)
    stars = pd.DataFrame(
        [
            {
                "star_id": s["star_id"],
                "name": s["name"],
                "region": s["region"],
                "birth_year": "" if s["birth_year"] is None else str(s["birth_year"]),
                "first_work_year": ""
                if s["first_work_year"] is None
                else str(s["first_work_year"]),
            }
            for s in ds.stars.values()
        ],
        columns=list(STAR_COLUMNS),
    )
    works = pd.DataFrame(list(ds.works.values()), columns=list(WORK_COLUMNS))
    cast = pd.DataFrame(ds.cast, columns=list(CAST_COLUMNS))
    return (
        write_table(stars, directory / "stars.csv"),
        write_table(works, directory / "works.csv"),
        write_table(cast, directory / "cast.csv"),
    )
