"""Node attribute type definitions."""

from __future__ import annotations

from typing import TypedDict

from .common import Region


class NodeAttributes(TypedDict):
    """Attributes of a star within one analysis period.

    ``prev_*`` fields are lagged one period; ``age_group`` is evaluated at
    the period's midpoint year and ``cohort`` bins ``first_work_year``.
    """

    region: Region
    birth_year: int | None
    first_work_year: int
    prev_cooperation_count: int
    prev_cross_region: bool
    age_group: str
    cohort: str
