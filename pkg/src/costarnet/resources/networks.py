"""Networks resource implementation."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

from ..graph import CollabNetwork
from ..ingest import derive_attributes, project
from ..interop import write_graph
from ..report import ClusteringVariant, describe, empty_summary, export_network

if TYPE_CHECKING:
    import builtins
    from collections.abc import Sequence

    from .._context import AnalysisContext
    from ..ingest import CooperationMeasure, PeriodAttributes
    from ..types.common import PeriodSpec, Region
    from ..types.results import PeriodSummary

logger = logging.getLogger(__name__)


class Networks:
    """Per-period co-starring networks of the loaded dataset."""

    def __init__(self, context: AnalysisContext) -> None:
        self._context = context

    def project(self, period: PeriodSpec, regions: Sequence[Region]) -> CollabNetwork:
        """Network of ``period`` over ``regions`` with lag-free attributes."""
        return project(self._context.dataset, period, regions)

    def attributes(
        self,
        schedule: Sequence[PeriodSpec],
        *,
        lead_in: PeriodSpec | None = None,
        cooperation: CooperationMeasure = "events",
    ) -> builtins.list[PeriodAttributes]:
        """Lagged node attributes per period."""
        return derive_attributes(
            self._context.dataset, schedule, lead_in=lead_in, cooperation=cooperation
        )

    def list(
        self,
        schedule: Sequence[PeriodSpec],
        regions: Sequence[Region],
        *,
        lead_in: PeriodSpec | None = None,
    ) -> builtins.list[tuple[CollabNetwork, bool]]:
        """Networks of every period with lagged attributes, each with its no-lag flag.

        Args:
            schedule: Sorted, disjoint periods
            regions: Regions whose stars are kept
            lead_in: Window preceding the schedule, used as the first lag

        Returns:
            ``(network, no_lag)`` pairs in schedule order
        """
        networks = []
        for attrs in self.attributes(schedule, lead_in=lead_in):
            g = project(self._context.dataset, attrs.period, regions, attributes=attrs.attributes)
            logger.info("Period %s: %d stars, %d edges", g.label, g.n_nodes, g.n_edges)
            networks.append((g, attrs.no_lag))
        return networks

    def describe(
        self,
        schedule: Sequence[PeriodSpec],
        regions: Sequence[Region],
        *,
        clustering: ClusteringVariant = "local",
    ) -> builtins.list[PeriodSummary]:
        """Summary row per period; periods without stars give all-zero rows."""
        summaries: builtins.list[PeriodSummary] = []
        for period in self._context.track(schedule, desc="describe"):
            g = project(self._context.dataset, period, regions)
            if g.n_nodes == 0:
                logger.warning("Period %s has no stars", period["label"])
                summaries.append(empty_summary(period, regions))
            else:
                summaries.append(describe(g, regions=regions, clustering=clustering))
        return summaries

    def export(
        self,
        g: CollabNetwork,
        directory: str | Path,
        *,
        min_degree: int = 0,
    ) -> builtins.list[Path]:
        """Write node list, edge list and GraphML of ``g`` into ``directory``."""
        directory = Path(directory)
        nodes, edges = export_network(
            g,
            directory / f"nodes_{g.label}.csv",
            directory / f"edges_{g.label}.csv",
            min_degree=min_degree,
        )
        graphml = write_graph(g, directory / f"network_{g.label}.graphml")
        return [nodes, edges, graphml]
