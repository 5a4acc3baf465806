"""Common type definitions shared across the package."""

from __future__ import annotations

from typing import Literal, TypedDict

Region = Literal["Mainland", "HongKong", "Taiwan", "Other"]

REGIONS: tuple[Region, ...] = ("Mainland", "HongKong", "Taiwan", "Other")

WorkKind = Literal["movie", "tv"]


class PeriodSpec(TypedDict):
    """A named analysis window; both ends inclusive."""

    label: str
    start_year: int
    end_year: int
