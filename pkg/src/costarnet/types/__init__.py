"""Type definitions for costarnet."""

from .common import REGIONS, PeriodSpec, Region, WorkKind
from .network import NodeAttributes
from .records import CastRecord, StarRecord, WorkRecord
from .results import (
    CrossCoopCell,
    CrossCoopRow,
    CrossCoopTable,
    ErgmFit,
    IndexResult,
    PeriodSummary,
    TermCheck,
)

__all__ = [
    "REGIONS",
    "CastRecord",
    "CrossCoopCell",
    "CrossCoopRow",
    "CrossCoopTable",
    "ErgmFit",
    "IndexResult",
    "NodeAttributes",
    "PeriodSpec",
    "PeriodSummary",
    "Region",
    "StarRecord",
    "TermCheck",
    "WorkKind",
    "WorkRecord",
]
