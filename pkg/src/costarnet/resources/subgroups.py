"""Subgroups resource implementation."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..report import SubgroupSpec, cross_coop_table

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .._context import AnalysisContext
    from ..types.common import PeriodSpec, Region
    from ..types.results import CrossCoopTable


class Subgroups:
    """Cross-region cooperation of star subgroups."""

    def __init__(self, context: AnalysisContext) -> None:
        self._context = context

    def table(
        self,
        schedule: Sequence[PeriodSpec],
        r1: Region,
        r2: Region,
        spec: SubgroupSpec | None = None,
        *,
        lead_in: PeriodSpec | None = None,
    ) -> CrossCoopTable:
        """Per-star mean cross-region cooperation by period, subgroup and side.

        Period rows fan out over the client's runner.
        """
        return cross_coop_table(
            self._context.dataset,
            schedule,
            r1,
            r2,
            spec or SubgroupSpec(),
            lead_in=lead_in,
            runner=self._context.runner,
        )
