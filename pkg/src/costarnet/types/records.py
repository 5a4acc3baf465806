"""Raw record type definitions for the star/work/cast dataset."""

from __future__ import annotations

from typing import TypedDict

from .common import Region, WorkKind


class StarRecord(TypedDict):
    """One row of ``stars.csv``."""

    star_id: str
    name: str
    region: Region
    birth_year: int | None
    first_work_year: int | None


class WorkRecord(TypedDict):
    """One row of ``works.csv``. Movies and TV works are pooled downstream."""

    work_id: str
    title: str
    year: int
    kind: WorkKind


class CastRecord(TypedDict):
    """One row of ``cast.csv``."""

    work_id: str
    star_id: str
