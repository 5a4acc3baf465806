"""Analysis period schedules."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

from ._exceptions import ConfigError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .types.common import PeriodSpec


def make_period(start_year: int, end_year: int, label: str | None = None) -> PeriodSpec:
    """Build a period, labelling it ``"start-end"`` (or ``"start"``) by default."""
    if start_year > end_year:
        raise ConfigError(f"Period start {start_year} is after its end {end_year}")
    if label is None:
        label = str(start_year) if start_year == end_year else f"{start_year}-{end_year}"
    return {"label": label, "start_year": start_year, "end_year": end_year}


def period_schedule(start_year: int, end_year: int, window: int) -> list[PeriodSpec]:
    """Split ``[start_year, end_year]`` into consecutive windows.

    The last window is truncated at ``end_year`` when the range does not
    divide evenly.

    Example:
        >>> [p["label"] for p in period_schedule(1990, 2009, 4)]
        ['1990-1993', '1994-1997', '1998-2001', '2002-2005', '2006-2009']
    """
    if window < 1:
        raise ConfigError(f"Window must be at least one year, got {window}")
    if start_year > end_year:
        raise ConfigError(f"--from {start_year} is after --to {end_year}")
    return [
        make_period(year, min(year + window - 1, end_year))
        for year in range(start_year, end_year + 1, window)
    ]


def lead_in_period(schedule: Sequence[PeriodSpec], label: str | None = None) -> PeriodSpec:
    """Window of the first period's length ending just before it starts."""
    first = schedule[0]
    length = first["end_year"] - first["start_year"] + 1
    end = first["start_year"] - 1
    return make_period(end - length + 1, end, label)


def validate_schedule(schedule: Sequence[PeriodSpec]) -> None:
    """Require well-formed, sorted, pairwise disjoint periods with unique labels."""
    labels: set[str] = set()
    previous_end: int | None = None
    for period in schedule:
        if period["start_year"] > period["end_year"]:
            raise ConfigError(
                f"Period '{period['label']}' starts after it ends "
                f"({period['start_year']} > {period['end_year']})"
            )
        if previous_end is not None and period["start_year"] <= previous_end:
            raise ConfigError(
                f"Period '{period['label']}' overlaps or precedes the previous period"
            )
        if period["label"] in labels:
            raise ConfigError(f"Duplicate period label '{period['label']}'")
        labels.add(period["label"])
        previous_end = period["end_year"]


def midpoint_year(period: PeriodSpec) -> int:
    """Integer midpoint year (rounded down) of a period."""
    return (period["start_year"] + period["end_year"]) // 2


def load_schedule(path: str | Path) -> list[PeriodSpec]:
    """Load a schedule from a JSON list of ``{label?, start_year, end_year}``."""
    try:
        raw: Any = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"Periods file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Periods file {path} is not valid JSON: {exc}") from exc

    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"Periods file {path} must contain a non-empty JSON list")

    schedule: list[PeriodSpec] = []
    for index, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ConfigError(f"Period #{index} in {path} is not an object")
        try:
            start = int(item["start_year"])
            end = int(item["end_year"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(
                f"Period #{index} in {path} needs integer start_year and end_year"
            ) from exc
        label = item.get("label")
        schedule.append(make_period(start, end, str(label) if label else None))
    validate_schedule(schedule)
    return schedule
