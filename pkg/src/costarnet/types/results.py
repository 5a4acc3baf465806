"""Result type definitions produced by the analysis operations."""

from __future__ import annotations

from typing import TypedDict

from typing_extensions import NotRequired


class IndexResult(TypedDict):
    """Cross-region cooperation index O/E for one period."""

    period: str
    pair: str
    observed: int
    expected: float
    ratio: float
    ci_low: float
    ci_high: float
    replicates: int


class PeriodSummary(TypedDict):
    """Descriptive statistics of one period's network."""

    period: str
    n_stars: int
    region_shares: dict[str, float]
    n_edges: int
    average_degree: float
    average_clustering: float


class ErgmFit(TypedDict):
    """Fitted dyad-independent ERGM.

    ``aic = residual_deviance + 2k`` and
    ``bic = residual_deviance + k * ln(n_dyads)``.
    """

    terms: list[str]
    theta: list[float]
    se: list[float]
    z: list[float]
    p_values: list[float]
    significance: list[str]
    log_likelihood: float
    null_deviance: float
    residual_deviance: float
    aic: float
    bic: float
    k: int
    n_dyads: int
    converged: bool
    iterations: int
    period: NotRequired[str]


class CrossCoopCell(TypedDict):
    """Per-side mean cross-region cooperation of one subgroup."""

    mean: float | None
    count: int
    total: float


class CrossCoopRow(TypedDict):
    """One period row of a subgroup cross-cooperation table."""

    period: str
    cells: dict[str, dict[str, CrossCoopCell]]


class CrossCoopTable(TypedDict):
    """Subgroup cross-region cooperation table with a totals row."""

    sides: list[str]
    subgroups: list[str]
    rows: list[CrossCoopRow]
    total: CrossCoopRow


class TermCheck(TypedDict):
    """Goodness-of-fit comparison for one model statistic."""

    term: str
    observed: float
    simulated_mean: float
    simulated_sd: float
    p_value: float
