"""Descriptive tables, index trends and model summaries."""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Literal

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure

from ._config import DEFAULT_FAME_QUANTILE, DEFAULT_GENERATION_CUTOFF
from ._exceptions import ConfigError, PreconditionError, SpecificationError, UndefinedInputError
from ._executor import SerialRunner
from ._tables import write_table
from .graph import average_clustering, average_degree, degree_sequence, transitivity
from .ingest import derive_attributes, project
from .types.common import REGIONS

if TYPE_CHECKING:
    from ._executor import TaskRunner
    from .graph import CollabNetwork
    from .ingest import Dataset
    from .types.common import PeriodSpec, Region
    from .types.network import NodeAttributes
    from .types.results import (
        CrossCoopCell,
        CrossCoopRow,
        CrossCoopTable,
        ErgmFit,
        IndexResult,
        PeriodSummary,
    )

logger = logging.getLogger(__name__)

ClusteringVariant = Literal["local", "global"]

SUBGROUPS = ("all", "famous", "older", "newer")
INDEX_COLUMNS = ("period", "observed", "expected", "ratio", "ci_low", "ci_high")
TOTAL_LABEL = "total"

# --- Period summaries -------------------------------------------------------


def describe(
    g: CollabNetwork,
    *,
    regions: Sequence[Region] | None = None,
    clustering: ClusteringVariant = "local",
) -> PeriodSummary:
    """Summary row of one period's network.

    Args:
        g: Nonempty network
        regions: Regions to report shares for (default: those present)
        clustering: ``"local"`` mean clustering or ``"global"`` transitivity

    Raises:
        UndefinedInputError: ``g`` has no nodes.
    """
    if g.n_nodes == 0:
        raise UndefinedInputError(f"Cannot describe empty network '{g.label}'")
    values = g.attribute_values("region")
    if regions is None:
        regions = [r for r in REGIONS if r in values]
    shares = {r: 100.0 * values.count(r) / g.n_nodes for r in regions}
    return {
        "period": g.label,
        "n_stars": g.n_nodes,
        "region_shares": shares,
        "n_edges": g.n_edges,
        "average_degree": average_degree(g),
        "average_clustering": average_clustering(g)
        if clustering == "local"
        else transitivity(g),
    }


def empty_summary(period: PeriodSpec, regions: Sequence[Region]) -> PeriodSummary:
    """All-zero summary row for a period without stars."""
    return {
        "period": period["label"],
        "n_stars": 0,
        "region_shares": dict.fromkeys(regions, 0.0),
        "n_edges": 0,
        "average_degree": 0.0,
        "average_clustering": 0.0,
    }


def summaries_frame(
    summaries: Sequence[PeriodSummary], regions: Sequence[Region]
) -> pd.DataFrame:
    """Table-1-style frame: one row per period, one share column per region."""
    rows = [
        {
            "period": s["period"],
            "n_stars": s["n_stars"],
            **{f"share_{r}": s["region_shares"].get(r, 0.0) for r in regions},
            "n_edges": s["n_edges"],
            "average_degree": s["average_degree"],
            "average_clustering": s["average_clustering"],
        }
        for s in summaries
    ]
    columns = [
        "period",
        "n_stars",
        *(f"share_{r}" for r in regions),
        "n_edges",
        "average_degree",
        "average_clustering",
    ]
    return pd.DataFrame(rows, columns=columns)


def export_period_summaries(
    summaries: Sequence[PeriodSummary], regions: Sequence[Region], path: str | Path
) -> Path:
    return write_table(summaries_frame(summaries, regions), path)


# --- Subgroup cross-cooperation tables ----------------------------------------


@dataclass(frozen=True)
class SubgroupSpec:
    """Rules splitting the stars of a period into subgroups.

    A star is *famous* when its lagged cooperation count is positive and
    reaches the top ``fame_quantile`` of its region in the period. A star is
    of the *older* generation when its first work predates
    ``generation_cutoff`` and of the *newer* one otherwise.
    """

    fame_quantile: float = DEFAULT_FAME_QUANTILE
    generation_cutoff: int = DEFAULT_GENERATION_CUTOFF

    def __post_init__(self) -> None:
        if not 0 < self.fame_quantile < 1:
            raise ConfigError(
                f"fame_quantile must lie in (0, 1), got {self.fame_quantile}"
            )

    def fame_threshold(self, counts: Sequence[int]) -> float:
        """Smallest lagged count that still counts as famous."""
        if not counts:
            return math.inf
        return float(np.quantile(counts, 1.0 - self.fame_quantile, method="higher"))

    def members(
        self, subgroup: str, attributes: Sequence[NodeAttributes], threshold: float
    ) -> list[bool]:
        if subgroup == "all":
            return [True] * len(attributes)
        if subgroup == "famous":
            return [
                0 < a["prev_cooperation_count"] and a["prev_cooperation_count"] >= threshold
                for a in attributes
            ]
        if subgroup == "older":
            return [a["first_work_year"] < self.generation_cutoff for a in attributes]
        if subgroup == "newer":
            return [a["first_work_year"] >= self.generation_cutoff for a in attributes]
        raise ConfigError(f"Unknown subgroup '{subgroup}'")


def _cell(total: float, count: int, defined: bool = True) -> CrossCoopCell:
    return {
        "mean": total / count if count and defined else None,
        "count": count if defined else 0,
        "total": total if defined else 0.0,
    }


def cross_cooperation(g: CollabNetwork, r1: Region, r2: Region) -> list[float]:
    """Weighted number of edges from each node to stars of the other region."""
    regions = g.attribute_values("region")
    cross = [0.0] * g.n_nodes
    pair = {r1, r2}
    for (u, v), w in zip(g.edges, g.weights):
        if regions[u] != regions[v] and {regions[u], regions[v]} == pair:
            cross[u] += w
            cross[v] += w
    return cross


def _period_row(
    g: CollabNetwork,
    sides: Sequence[Region],
    spec: SubgroupSpec,
    no_lag: bool,
) -> CrossCoopRow:
    regions = g.attribute_values("region")
    cross = cross_cooperation(g, sides[0], sides[1])
    both_present = all(side in regions for side in sides)
    if not both_present:
        logger.warning(
            "Period %s lacks stars of %s; its cells are left blank",
            g.label,
            " or ".join(s for s in sides if s not in regions),
        )
    cells: dict[str, dict[str, CrossCoopCell]] = {}
    for subgroup in SUBGROUPS:
        defined = both_present and not (subgroup == "famous" and no_lag)
        cells[subgroup] = {}
        for side in sides:
            nodes = [n for n in range(g.n_nodes) if regions[n] == side]
            attrs = [g.attributes[n] for n in nodes]
            threshold = spec.fame_threshold([a["prev_cooperation_count"] for a in attrs])
            chosen = [n for n, keep in zip(nodes, spec.members(subgroup, attrs, threshold)) if keep]
            cells[subgroup][side] = _cell(sum(cross[n] for n in chosen), len(chosen), defined)
    return {"period": g.label, "cells": cells}


def _period_row_task(task: tuple[CollabNetwork, list[Region], SubgroupSpec, bool]) -> CrossCoopRow:
    return _period_row(*task)


def cross_coop_table(
    ds: Dataset,
    schedule: Sequence[PeriodSpec],
    r1: Region,
    r2: Region,
    spec: SubgroupSpec | None = None,
    *,
    lead_in: PeriodSpec | None = None,
    runner: TaskRunner | None = None,
) -> CrossCoopTable:
    """Mean cross-region cooperation per star, by period, subgroup and side.

    The cell of side ``r1`` sums, over the subgroup's ``r1`` stars, the
    weights of their edges to ``r2`` stars and divides by the number of
    those stars; side ``r2`` is analogous. With ``lead_in`` the lead-in
    window gets its own first row. Cells are blank (``mean=None``) when a
    region is absent from the period, when a subgroup is empty, and for
    *famous* in a period without lag information. The totals row pools
    sums and counts over the period rows. Period rows are computed on
    ``runner`` and kept in period order.
    """
    if r1 == r2:
        raise PreconditionError(f"Cross-cooperation needs two regions, got {r1} twice")
    spec = spec or SubgroupSpec()
    runner = runner or SerialRunner()
    sides: list[Region] = [r1, r2]

    tasks: list[tuple[CollabNetwork, list[Region], SubgroupSpec, bool]] = []
    if lead_in is not None:
        lead_attrs = derive_attributes(ds, [lead_in])[0]
        g = project(ds, lead_in, sides, attributes=lead_attrs.attributes)
        tasks.append((g, sides, spec, True))
    for period_attrs in derive_attributes(ds, schedule, lead_in=lead_in):
        g = project(ds, period_attrs.period, sides, attributes=period_attrs.attributes)
        tasks.append((g, sides, spec, period_attrs.no_lag))
    rows = runner.map(_period_row_task, tasks)

    total_cells: dict[str, dict[str, CrossCoopCell]] = {}
    for subgroup in SUBGROUPS:
        total_cells[subgroup] = {}
        for side in sides:
            total = sum(row["cells"][subgroup][side]["total"] for row in rows)
            count = sum(row["cells"][subgroup][side]["count"] for row in rows)
            total_cells[subgroup][side] = _cell(total, count)
    return {
        "sides": list(sides),
        "subgroups": list(SUBGROUPS),
        "rows": rows,
        "total": {"period": TOTAL_LABEL, "cells": total_cells},
    }


def cross_coop_frame(table: CrossCoopTable) -> pd.DataFrame:
    """Flat frame with ``<subgroup>.<side>.mean`` and ``.count`` columns.

    Blank cells hold empty strings.
    """
    columns = ["period"]
    for subgroup in table["subgroups"]:
        for side in table["sides"]:
            columns += [f"{subgroup}.{side}.mean", f"{subgroup}.{side}.count"]
    records = []
    for row in [*table["rows"], table["total"]]:
        record: dict[str, object] = {"period": row["period"]}
        for subgroup in table["subgroups"]:
            for side in table["sides"]:
                cell = row["cells"][subgroup][side]
                record[f"{subgroup}.{side}.mean"] = "" if cell["mean"] is None else cell["mean"]
                record[f"{subgroup}.{side}.count"] = cell["count"]
        records.append(record)
    return pd.DataFrame(records, columns=columns)


def export_cross_coop_table(table: CrossCoopTable, path: str | Path) -> Path:
    return write_table(cross_coop_frame(table), path)


# --- Index trends ------------------------------------------------------------


def index_frame(results: Sequence[IndexResult]) -> pd.DataFrame:
    return pd.DataFrame(
        [{c: r[c] for c in INDEX_COLUMNS} for r in results],  # type: ignore[literal-required]
        columns=list(INDEX_COLUMNS),
    )


def export_index_trend(
    results: Sequence[IndexResult],
    path: str | Path,
    *,
    svg_path: str | Path | None = None,
) -> Path:
    """Write one index series as CSV, optionally with an SVG chart.

    Args:
        results: Index results of one region pair, in period order
        path: CSV destination
        svg_path: SVG destination; no chart when omitted

    Returns:
        The CSV path.
    """
    pairs = {r["pair"] for r in results}
    if len(pairs) > 1:
        raise PreconditionError(
            f"An index trend holds one region pair, got {', '.join(sorted(pairs))}"
        )
    written = write_table(index_frame(results), path)
    if svg_path is not None:
        name = next(iter(pairs)) if pairs else "index"
        render_index_svg({name: results}, svg_path)
    return written


_FIGSIZE = (9.0, 5.0)
_SVG_SALT = "costarnet"


def index_axis_limit(series: Mapping[str, Sequence[IndexResult]]) -> float:
    """Top of the y axis: a tenth above the largest finite ratio."""
    values = [
        r["ratio"] for results in series.values() for r in results if math.isfinite(r["ratio"])
    ]
    top = max(values, default=0.0)
    return 1.1 * top if top > 0 else 1.0


def index_figure(
    series: Mapping[str, Sequence[IndexResult]],
    *,
    title: str = "Cross-region cooperation index",
) -> Figure:
    """Point estimates with percentile error bars, one line per series.

    Periods are spaced evenly along x in first-seen order and a dashed
    line marks the null value 1. Band bounds above the y axis are cut at
    its top.
    """
    periods: list[str] = []
    for results in series.values():
        for r in results:
            if r["period"] not in periods:
                periods.append(r["period"])
    y_top = index_axis_limit(series)

    fig = Figure(figsize=_FIGSIZE, layout="tight")
    ax = fig.add_subplot(1, 1, 1)
    ax.set_title(title)
    ax.set_xlabel("Period")
    ax.set_ylabel("Observed / expected")
    ax.axhline(1.0, color="0.5", linestyle="--", linewidth=1, gid="null-line")

    for name, results in series.items():
        shown = [r for r in results if math.isfinite(r["ratio"])]
        if not shown:
            logger.warning("Series %s has no finite ratio to plot", name)
            continue
        x = [periods.index(r["period"]) for r in shown]
        y = np.array([r["ratio"] for r in shown])
        low = np.array([r["ci_low"] for r in shown])
        high = np.minimum([r["ci_high"] for r in shown], y_top)
        yerr = np.vstack([np.clip(y - low, 0.0, None), np.clip(high - y, 0.0, None)])
        bars = ax.errorbar(x, y, yerr=yerr, fmt="-o", capsize=3, markersize=4, label=name)
        bars.lines[0].set_gid(f"series-{name}")

    ax.set_xticks(range(len(periods)), periods, rotation=45, ha="right")
    ax.set_xlim(-0.5, max(len(periods) - 0.5, 0.5))
    ax.set_ylim(0.0, y_top)
    ax.grid(axis="y", linestyle="--", alpha=0.3)
    if ax.containers:
        ax.legend(loc="upper left", bbox_to_anchor=(1.02, 1.0), fontsize=8)
    return fig


def render_index_svg(
    series: Mapping[str, Sequence[IndexResult]],
    path: str | Path,
    *,
    title: str = "Cross-region cooperation index",
) -> Path:
    """Write :func:`index_figure` as SVG; equal input gives equal bytes."""
    fig = index_figure(series, title=title)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with matplotlib.rc_context({"svg.hashsalt": _SVG_SALT}):
            fig.savefig(path, format="svg", metadata={"Date": None, "Title": title})
    except OSError as exc:
        raise ConfigError(f"Cannot write {path}: {exc}") from exc
    return path


# --- Model summaries -----------------------------------------------------------

DEFAULT_SUMMARY_TERM = "nodematch.region"


def export_coefficient_summary(
    fits: Mapping[str, ErgmFit],
    path: str | Path,
    term: str = DEFAULT_SUMMARY_TERM,
) -> Path:
    """CSV ``period,coefficient,se`` of one term across period fits.

    Raises:
        SpecificationError: ``term`` is missing from a fit; names the period.
    """
    rows = []
    for period, result in fits.items():
        if term not in result["terms"]:
            raise SpecificationError(f"Term '{term}' is missing from the fit of period {period}")
        col = result["terms"].index(term)
        rows.append(
            {"period": period, "coefficient": result["theta"][col], "se": result["se"][col]}
        )
    return write_table(pd.DataFrame(rows, columns=["period", "coefficient", "se"]), path)


MODEL_SCORE_ROWS = ("aic", "bic", "null_deviance", "residual_deviance", "k", "n_dyads")


def model_table_frame(fits: Mapping[str, ErgmFit]) -> pd.DataFrame:
    """One row per term, then score rows; one column per period.

    Coefficients read ``"1.8100***"``; a term absent from a period's fit
    leaves its cell blank.
    """
    terms: list[str] = []
    for result in fits.values():
        terms.extend(t for t in result["terms"] if t not in terms)

    rows: list[dict[str, object]] = []
    for term in terms:
        row: dict[str, object] = {"row": term}
        for period, result in fits.items():
            if term in result["terms"]:
                col = result["terms"].index(term)
                row[period] = f"{result['theta'][col]:.4f}{result['significance'][col]}"
            else:
                row[period] = ""
        rows.append(row)
    for score in MODEL_SCORE_ROWS:
        rows.append({"row": score, **{p: r[score] for p, r in fits.items()}})  # type: ignore[literal-required]
    return pd.DataFrame(rows, columns=["row", *fits])


def export_model_table(fits: Mapping[str, ErgmFit], path: str | Path) -> Path:
    return write_table(model_table_frame(fits), path)


# --- Network export ---------------------------------------------------------


def export_network(
    g: CollabNetwork,
    nodes_path: str | Path,
    edges_path: str | Path,
    *,
    min_degree: int = 0,
) -> tuple[Path, Path]:
    """Node and edge lists of the nodes with degree above ``min_degree``."""
    degrees = degree_sequence(g)
    keep = [n for n in range(g.n_nodes) if degrees[n] > min_degree]
    kept = set(keep)
    nodes = pd.DataFrame(
        [
            {
                "star_id": g.star_ids[n],
                "degree": degrees[n],
                **{k: ("" if v is None else v) for k, v in g.attributes[n].items()},
            }
            for n in keep
        ],
        columns=["star_id", "degree", *(g.attributes[0] if g.n_nodes else ())],
    )
    edges = pd.DataFrame(
        [
            {"source": g.star_ids[u], "target": g.star_ids[v], "weight": w}
            for (u, v), w in zip(g.edges, g.weights)
            if u in kept and v in kept
        ],
        columns=["source", "target", "weight"],
    )
    logger.debug("Exported %d of %d nodes of %s", len(keep), g.n_nodes, g.label)
    return write_table(nodes, nodes_path), write_table(edges, edges_path)
