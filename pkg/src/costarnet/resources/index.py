"""Cross-region index resource implementation."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from .. import _config
from .._seeding import derive_seed
from ..ingest import project
from ..null_model import SwapConfig, cross_region_index

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .._context import AnalysisContext
    from ..graph import CollabNetwork
    from ..types.common import PeriodSpec, Region
    from ..types.results import IndexResult

logger = logging.getLogger(__name__)


def _period_index(task: tuple[CollabNetwork, Region, Region, SwapConfig]) -> IndexResult:
    return cross_region_index(*task)


class Index:
    """Degree-preserving null model and the O/E cross-region index."""

    def __init__(self, context: AnalysisContext) -> None:
        self._context = context

    def swap_config(
        self,
        *,
        replicates: int | None = None,
        swap_multiplier: float | None = None,
        count_successful: bool = False,
        seed: int | None = None,
    ) -> SwapConfig:
        return SwapConfig(
            swap_multiplier=swap_multiplier or _config.swap_multiplier,
            replicates=replicates or _config.replicates,
            seed=self._context.seed if seed is None else seed,
            count_successful=count_successful,
        )

    def compute(
        self,
        g: CollabNetwork,
        r1: Region,
        r2: Region,
        *,
        replicates: int | None = None,
        swap_multiplier: float | None = None,
        count_successful: bool = False,
        seed: int | None = None,
    ) -> IndexResult:
        """Index of one network; replicates fan out over the client's runner."""
        cfg = self.swap_config(
            replicates=replicates,
            swap_multiplier=swap_multiplier,
            count_successful=count_successful,
            seed=seed,
        )
        return cross_region_index(g, r1, r2, cfg, runner=self._context.runner)

    def trend(
        self,
        schedule: Sequence[PeriodSpec],
        r1: Region,
        r2: Region,
        *,
        replicates: int | None = None,
        swap_multiplier: float | None = None,
        count_successful: bool = False,
    ) -> list[IndexResult]:
        """Index per period, projected over ``{r1, r2}``.

        Period ``k`` seeds its replicates from ``(run seed, k)``. Periods
        lacking stars of either region are skipped with a warning. With at
        least as many periods as workers the periods fan out over the
        runner, otherwise their replicates do; both give equal results.

        Args:
            schedule: Sorted periods
            r1: First region
            r2: Second region
            replicates: Randomized replicates per period
            swap_multiplier: Swap attempts per edge
            count_successful: Count only accepted swaps

        Returns:
            Results of the periods that have both regions, in order
        """
        tasks: list[tuple[CollabNetwork, Region, Region, SwapConfig]] = []
        for k, period in enumerate(self._context.track(schedule, desc=f"index {r1}-{r2}")):
            g = project(self._context.dataset, period, [r1, r2])
            regions = set(g.attribute_values("region"))
            if r1 not in regions or r2 not in regions:
                logger.warning(
                    "Skipping period %s: no stars from %s",
                    period["label"],
                    " or ".join(r for r in (r1, r2) if r not in regions),
                )
                continue
            cfg = self.swap_config(
                replicates=replicates,
                swap_multiplier=swap_multiplier,
                count_successful=count_successful,
                seed=derive_seed(self._context.seed, k),
            )
            tasks.append((g, r1, r2, cfg))

        runner = self._context.runner
        if 1 < runner.workers <= len(tasks):
            logger.debug(
                "Index %s-%s: %d periods over %d workers", r1, r2, len(tasks), runner.workers
            )
            return runner.map(_period_index, tasks)
        return [cross_region_index(*task, runner=runner) for task in tasks]
