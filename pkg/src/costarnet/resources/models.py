"""Models resource implementation."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from .._seeding import derive_rng
from ..ergm import default_terms, drop_lagged_terms, fit, goodness_of_fit, resolve_terms
from ..ingest import derive_attributes, project

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .._context import AnalysisContext
    from ..ergm import Term
    from ..graph import CollabNetwork
    from ..types.common import PeriodSpec, Region
    from ..types.results import ErgmFit, TermCheck

logger = logging.getLogger(__name__)


class Models:
    """Dyad-independent ERGM fits of period networks."""

    def __init__(self, context: AnalysisContext) -> None:
        self._context = context

    def fit(
        self,
        g: CollabNetwork,
        terms: Sequence[Term] | None = None,
        *,
        dyad_cap: int | None = None,
    ) -> ErgmFit:
        """Fit ``terms`` (default: the standard regional model) to ``g``."""
        return fit(
            g,
            terms if terms is not None else default_terms(),
            runner=self._context.runner,
            dyad_cap=dyad_cap,
        )

    def goodness_of_fit(
        self,
        g: CollabNetwork,
        result: ErgmFit,
        terms: Sequence[Term],
        n_samples: int,
        *,
        key: int = 0,
    ) -> list[TermCheck]:
        """Simulation check of ``result``; the chain seeds from ``(run seed, key)``."""
        resolved = resolve_terms(terms, g)
        return goodness_of_fit(
            g, resolved, result["theta"], n_samples, derive_rng(self._context.seed, key)
        )

    def fit_periods(
        self,
        schedule: Sequence[PeriodSpec],
        r1: Region,
        r2: Region,
        terms: Sequence[Term] | None = None,
        *,
        lead_in: PeriodSpec | None = None,
        gof_samples: int = 0,
        dyad_cap: int | None = None,
    ) -> tuple[dict[str, ErgmFit], dict[str, list[TermCheck]]]:
        """Fit every period network over ``{r1, r2}``.

        Terms on lagged attributes are dropped, with a warning, in periods
        without lag information.

        Args:
            schedule: Sorted periods
            r1: Reference region of the default region dummies
            r2: Second region
            terms: Model terms (default: the standard regional model)
            lead_in: Window used as the first period's lag
            gof_samples: Simulated networks per goodness-of-fit check; 0 skips
            dyad_cap: Largest admissible ``C(n, 2)``; ``COSTARNET_DYAD_CAP`` when omitted

        Returns:
            ``(fits, checks)`` keyed by period label, in schedule order
        """
        base_terms = list(terms) if terms is not None else default_terms(r1)
        fits: dict[str, ErgmFit] = {}
        checks: dict[str, list[TermCheck]] = {}
        periods = derive_attributes(self._context.dataset, schedule, lead_in=lead_in)
        for k, attrs in enumerate(self._context.track(periods, desc="ergm")):
            g = project(self._context.dataset, attrs.period, [r1, r2], attributes=attrs.attributes)
            period_terms = base_terms
            if attrs.no_lag:
                period_terms, dropped = drop_lagged_terms(base_terms)
                if dropped:
                    logger.warning(
                        "Period %s has no lag window; dropping %s",
                        g.label,
                        ", ".join(t.attribute or t.name for t in dropped),
                    )
            result = self.fit(g, period_terms, dyad_cap=dyad_cap)
            fits[g.label] = result
            if gof_samples > 0:
                checks[g.label] = self.goodness_of_fit(
                    g, result, period_terms, gof_samples, key=k
                )
        return fits, checks
