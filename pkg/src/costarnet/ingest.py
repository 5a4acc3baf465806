"""Loading, validating and projecting the star/work/cast dataset."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Literal

from ._config import DEFAULT_MAX_CAST_SIZE
from ._exceptions import (
    DanglingReferenceError,
    MalformedRowError,
    PreconditionError,
    UnknownRegionError,
)
from ._tables import read_table
from .graph import CollabNetwork
from .periods import midpoint_year, validate_schedule
from .types.common import REGIONS

if TYPE_CHECKING:
    from collections.abc import Collection, Iterable, Mapping, Sequence
    from pathlib import Path

    import pandas as pd

    from .types.common import PeriodSpec, Region, WorkKind
    from .types.network import NodeAttributes
    from .types.records import CastRecord, StarRecord, WorkRecord

logger = logging.getLogger(__name__)

STAR_COLUMNS = ("star_id", "name", "region", "birth_year", "first_work_year")
WORK_COLUMNS = ("work_id", "title", "year", "kind")
CAST_COLUMNS = ("work_id", "star_id")

MIN_YEAR = 1900
MAX_YEAR = 2100
WORK_KINDS: tuple[WorkKind, ...] = ("movie", "tv")

CooperationMeasure = Literal["events", "partners"]

AGE_UNKNOWN = "unknown"
COHORT_REFERENCE = "before1980"
AGE_REFERENCE = "under20"


@dataclass
class Dataset:
    """Referentially closed star/work/cast records plus lookup indexes.

    Construct through :meth:`from_records` or :func:`load_dataset`, which
    validate the records; stars and works keep their file order.
    """

    stars: dict[str, StarRecord]
    works: dict[str, WorkRecord]
    cast: list[CastRecord]
    duplicate_cast_rows: int = 0
    cast_by_work: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)
    works_by_star: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_records(
        cls,
        stars: Iterable[StarRecord],
        works: Iterable[WorkRecord],
        cast: Iterable[CastRecord],
        *,
        max_cast_size: int = DEFAULT_MAX_CAST_SIZE,
        duplicate_cast_rows: int = 0,
        star_lines: Mapping[str, int] | None = None,
        stars_path: str | None = None,
    ) -> Dataset:
        """Validate records and build indexes.

        Duplicate ``(work_id, star_id)`` pairs are dropped and counted.
        ``first_work_year`` is filled from the star's earliest work when the
        record leaves it empty.

        Raises:
            MalformedRowError: Duplicate keys, oversized casts or birth years
                not before the first appearance.
            DanglingReferenceError: A cast row references an unknown key.
        """
        star_map: dict[str, StarRecord] = {}
        for star in stars:
            if star["star_id"] in star_map:
                raise MalformedRowError(f"Duplicate star_id '{star['star_id']}'")
            star_map[star["star_id"]] = dict(star)  # type: ignore[assignment]
        work_map: dict[str, WorkRecord] = {}
        for work in works:
            if work["work_id"] in work_map:
                raise MalformedRowError(f"Duplicate work_id '{work['work_id']}'")
            work_map[work["work_id"]] = work

        seen: set[tuple[str, str]] = set()
        unique_cast: list[CastRecord] = []
        members: dict[str, list[str]] = {work_id: [] for work_id in work_map}
        star_works: dict[str, list[str]] = {star_id: [] for star_id in star_map}
        for row in cast:
            if row["work_id"] not in work_map:
                raise DanglingReferenceError(
                    f"Cast row references unknown work_id '{row['work_id']}'",
                    key=row["work_id"],
                )
            if row["star_id"] not in star_map:
                raise DanglingReferenceError(
                    f"Cast row references unknown star_id '{row['star_id']}'",
                    key=row["star_id"],
                )
            pair = (row["work_id"], row["star_id"])
            if pair in seen:
                duplicate_cast_rows += 1
                continue
            seen.add(pair)
            unique_cast.append(row)
            members[row["work_id"]].append(row["star_id"])
            star_works[row["star_id"]].append(row["work_id"])

        for work_id, cast_ids in members.items():
            if len(cast_ids) > max_cast_size:
                raise MalformedRowError(
                    f"Work '{work_id}' lists {len(cast_ids)} cast members, "
                    f"more than the limit of {max_cast_size}"
                )

        for star_id, star in star_map.items():
            years = [work_map[w]["year"] for w in star_works[star_id]]
            earliest = min(years) if years else None
            line = star_lines.get(star_id) if star_lines else None
            if star["first_work_year"] is None:
                star["first_work_year"] = earliest
            elif earliest is not None and star["first_work_year"] > earliest:
                raise MalformedRowError(
                    f"Star '{star_id}' has first_work_year {star['first_work_year']} "
                    f"but appears in a work from {earliest}",
                    path=stars_path,
                    line=line,
                )
            first = star["first_work_year"]
            if star["birth_year"] is not None and first is not None and star["birth_year"] >= first:
                raise MalformedRowError(
                    f"Star '{star_id}' born {star['birth_year']}, "
                    f"not before first appearance {first}",
                    path=stars_path,
                    line=line,
                )

        if duplicate_cast_rows:
            logger.warning("Dropped %d duplicate cast rows", duplicate_cast_rows)

        return cls(
            stars=star_map,
            works=work_map,
            cast=unique_cast,
            duplicate_cast_rows=duplicate_cast_rows,
            cast_by_work={w: tuple(ids) for w, ids in members.items()},
            works_by_star={s: tuple(ids) for s, ids in star_works.items()},
        )

    def works_in(self, period: PeriodSpec) -> list[str]:
        """Work ids dated inside ``period``, in file order."""
        start, end = period["start_year"], period["end_year"]
        return [w for w, rec in self.works.items() if start <= rec["year"] <= end]


def _parse_int(
    value: str,
    column: str,
    *,
    path: str,
    line: int,
    required: bool,
) -> int | None:
    value = value.strip()
    if not value:
        if required:
            raise MalformedRowError(f"Missing {column}", path=path, line=line)
        return None
    try:
        return int(value)
    except ValueError as exc:
        raise MalformedRowError(
            f"{column} '{value}' is not an integer", path=path, line=line
        ) from exc


def _parse_stars(frame: pd.DataFrame, path: str) -> tuple[list[StarRecord], dict[str, int]]:
    stars: list[StarRecord] = []
    lines: dict[str, int] = {}
    for row in frame.itertuples(index=False):
        line = int(row.line)
        star_id = row.star_id.strip()
        if not star_id:
            raise MalformedRowError("Empty star_id", path=path, line=line)
        if star_id in lines:
            raise MalformedRowError(
                f"Duplicate star_id '{star_id}' (first seen on line {lines[star_id]})",
                path=path,
                line=line,
            )
        region = row.region.strip()
        if region not in REGIONS:
            raise UnknownRegionError(
                f"Unknown region '{region}' for star '{star_id}'; "
                f"expected one of {', '.join(REGIONS)}",
                path=path,
                line=line,
            )
        lines[star_id] = line
        stars.append(
            {
                "star_id": star_id,
                "name": row.name,
                "region": region,  # type: ignore[typeddict-item]
                "birth_year": _parse_int(
                    row.birth_year, "birth_year", path=path, line=line, required=False
                ),
                "first_work_year": _parse_int(
                    row.first_work_year,
                    "first_work_year",
                    path=path,
                    line=line,
                    required=False,
                ),
            }
        )
    return stars, lines


def _parse_works(frame: pd.DataFrame, path: str) -> list[WorkRecord]:
    works: list[WorkRecord] = []
    seen: set[str] = set()
    for row in frame.itertuples(index=False):
        line = int(row.line)
        work_id = row.work_id.strip()
        if not work_id:
            raise MalformedRowError("Empty work_id", path=path, line=line)
        if work_id in seen:
            raise MalformedRowError(
                f"Duplicate work_id '{work_id}'", path=path, line=line
            )
        year = _parse_int(row.year, "year", path=path, line=line, required=True)
        assert year is not None
        if not MIN_YEAR <= year <= MAX_YEAR:
            raise MalformedRowError(
                f"Year {year} of work '{work_id}' outside [{MIN_YEAR}, {MAX_YEAR}]",
                path=path,
                line=line,
            )
        kind = row.kind.strip().lower()
        if kind not in WORK_KINDS:
            raise MalformedRowError(
                f"Work kind '{row.kind}' is not one of {', '.join(WORK_KINDS)}",
                path=path,
                line=line,
            )
        seen.add(work_id)
        works.append(
            {"work_id": work_id, "title": row.title, "year": year, "kind": kind}  # type: ignore[typeddict-item]
        )
    return works


def _parse_cast(
    frame: pd.DataFrame,
    path: str,
    star_ids: Collection[str],
    work_ids: Collection[str],
) -> list[CastRecord]:
    cast: list[CastRecord] = []
    for row in frame.itertuples(index=False):
        line = int(row.line)
        work_id = row.work_id.strip()
        star_id = row.star_id.strip()
        if work_id not in work_ids:
            raise DanglingReferenceError(
                f"Cast row references unknown work_id '{work_id}'",
                key=work_id,
                path=path,
                line=line,
            )
        if star_id not in star_ids:
            raise DanglingReferenceError(
                f"Cast row references unknown star_id '{star_id}'",
                key=star_id,
                path=path,
                line=line,
            )
        cast.append({"work_id": work_id, "star_id": star_id})
    return cast


def load_dataset(
    stars_path: str | Path,
    works_path: str | Path,
    cast_path: str | Path,
    *,
    max_cast_size: int = DEFAULT_MAX_CAST_SIZE,
) -> Dataset:
    """Load and validate ``stars.csv``, ``works.csv`` and ``cast.csv``.

    Args:
        stars_path: CSV with header ``star_id,name,region,birth_year,first_work_year``
        works_path: CSV with header ``work_id,title,year,kind``
        cast_path: CSV with header ``work_id,star_id``
        max_cast_size: Works with more cast members are rejected

    Returns:
        The validated dataset; ``duplicate_cast_rows`` counts dropped repeats.

    Raises:
        DataFileNotFoundError: A file is missing.
        MalformedRowError: A row does not parse (reported with its line).
        DanglingReferenceError: A cast row references an unknown key.
        UnknownRegionError: A region label is not recognised.
    """
    stars_file, works_file, cast_file = str(stars_path), str(works_path), str(cast_path)
    stars, star_lines = _parse_stars(read_table(stars_file, STAR_COLUMNS), stars_file)
    works = _parse_works(read_table(works_file, WORK_COLUMNS), works_file)
    cast = _parse_cast(
        read_table(cast_file, CAST_COLUMNS),
        cast_file,
        star_lines,
        {w["work_id"] for w in works},
    )
    dataset = Dataset.from_records(
        stars,
        works,
        cast,
        max_cast_size=max_cast_size,
        star_lines=star_lines,
        stars_path=stars_file,
    )
    logger.info(
        "Loaded %d stars, %d works, %d cast rows",
        len(dataset.stars),
        len(dataset.works),
        len(dataset.cast),
    )
    return dataset


def age_group(birth_year: int | None, year: int) -> str:
    """Age bracket at ``year``: ``under20``, ``20-39``, ``40-59``, ``60plus`` or ``unknown``."""
    if birth_year is None:
        return AGE_UNKNOWN
    age = year - birth_year
    if age < 20:
        return AGE_REFERENCE
    if age < 40:
        return "20-39"
    if age < 60:
        return "40-59"
    return "60plus"


def cohort(first_work_year: int) -> str:
    """Career-entry cohort: ``before1980`` then 5-year bins ``1980-1984``, ..."""
    if first_work_year < 1980:
        return COHORT_REFERENCE
    start = 1980 + 5 * ((first_work_year - 1980) // 5)
    return f"{start}-{start + 4}"


def static_attributes(star: StarRecord, period: PeriodSpec) -> NodeAttributes:
    """Attributes of a star in ``period`` with no lagged information."""
    first = star["first_work_year"]
    if first is None:
        first = period["end_year"]
    return {
        "region": star["region"],
        "birth_year": star["birth_year"],
        "first_work_year": first,
        "prev_cooperation_count": 0,
        "prev_cross_region": False,
        "age_group": age_group(star["birth_year"], midpoint_year(period)),
        "cohort": cohort(first),
    }


def project(
    ds: Dataset,
    period: PeriodSpec,
    regions: Collection[Region],
    *,
    attributes: Mapping[str, NodeAttributes] | None = None,
) -> CollabNetwork:
    """Project the cast relation of ``period`` onto a co-starring network.

    Nodes are the stars of ``regions`` that appear in at least one work
    dated in ``period``, in dataset order. Every pair of included cast
    members of such a work is an edge whose weight counts their shared
    works in the period.

    Args:
        ds: The dataset
        period: Analysis window
        regions: Regions whose stars are kept
        attributes: Per-star attributes, e.g. from :func:`derive_attributes`;
            stars missing from it get :func:`static_attributes`

    Returns:
        The period network; empty when the period has no works.
    """
    if not regions:
        raise PreconditionError("At least one region must be selected")
    keep = set(regions)

    present: set[str] = set()
    pair_counts: Counter[tuple[str, str]] = Counter()
    for work_id in ds.works_in(period):
        included = [s for s in ds.cast_by_work[work_id] if ds.stars[s]["region"] in keep]
        present.update(included)
        pair_counts.update(
            (a, b) if a < b else (b, a) for a, b in combinations(included, 2)
        )

    star_ids = [s for s in ds.stars if s in present]
    node_of = {s: i for i, s in enumerate(star_ids)}
    node_attributes = [
        attributes[s]
        if attributes is not None and s in attributes
        else static_attributes(ds.stars[s], period)
        for s in star_ids
    ]

    edges = sorted(
        ((min(node_of[a], node_of[b]), max(node_of[a], node_of[b])), count)
        for (a, b), count in pair_counts.items()
    )
    network = CollabNetwork(
        period,
        star_ids,
        node_attributes,
        [e for e, _ in edges],
        [w for _, w in edges],
    )
    logger.debug("Projected %r over regions %s", network, sorted(keep))
    return network


@dataclass(frozen=True)
class PeriodAttributes:
    """Derived node attributes of one period.

    ``no_lag`` marks a period without a preceding window, whose lagged
    fields are all zero/false.
    """

    period: PeriodSpec
    attributes: dict[str, NodeAttributes]
    no_lag: bool


def _lagged_activity(
    ds: Dataset,
    lag_period: PeriodSpec,
    cooperation: CooperationMeasure,
) -> tuple[dict[str, int], set[str]]:
    lag = project(ds, lag_period, REGIONS)
    counts = dict.fromkeys(lag.star_ids, 0)
    crossed: set[str] = set()
    regions = lag.attribute_values("region")
    for (u, v), weight in zip(lag.edges, lag.weights):
        step = weight if cooperation == "events" else 1
        counts[lag.star_ids[u]] += step
        counts[lag.star_ids[v]] += step
        if regions[u] != regions[v]:
            crossed.add(lag.star_ids[u])
            crossed.add(lag.star_ids[v])
    return counts, crossed


def derive_attributes(
    ds: Dataset,
    schedule: Sequence[PeriodSpec],
    *,
    lead_in: PeriodSpec | None = None,
    cooperation: CooperationMeasure = "events",
) -> list[PeriodAttributes]:
    """Derive per-period node attributes with one-period lags.

    For period ``k`` the lag window is period ``k-1``; for the first period
    it is ``lead_in`` when given, otherwise the period is flagged ``no_lag``.
    Lags are read from the all-regions network of the lag window:
    ``prev_cooperation_count`` sums incident edge weights (``"events"``) or
    counts partners (``"partners"``), and ``prev_cross_region`` is true when
    the star had an edge to a star of another region.

    Returns:
        One :class:`PeriodAttributes` per period, covering every star that
        appears in a work of the period.
    """
    full = [lead_in, *schedule] if lead_in is not None else list(schedule)
    validate_schedule(full)

    results: list[PeriodAttributes] = []
    for k, period in enumerate(schedule):
        lag_period = schedule[k - 1] if k > 0 else lead_in
        if lag_period is None:
            counts: dict[str, int] = {}
            crossed: set[str] = set()
        else:
            counts, crossed = _lagged_activity(ds, lag_period, cooperation)

        attributes: dict[str, NodeAttributes] = {}
        active = {s for w in ds.works_in(period) for s in ds.cast_by_work[w]}
        for star_id in ds.stars:
            if star_id not in active:
                continue
            attrs = static_attributes(ds.stars[star_id], period)
            attrs["prev_cooperation_count"] = counts.get(star_id, 0)
            attrs["prev_cross_region"] = star_id in crossed
            attributes[star_id] = attrs

        if lag_period is None:
            logger.warning("Period %s has no lag window; lagged fields are zero", period["label"])
        results.append(
            PeriodAttributes(period=period, attributes=attributes, no_lag=lag_period is None)
        )
    return results
