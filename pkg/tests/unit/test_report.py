"""Tests for summary tables, subgroup tables, index charts and model tables."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd
import pytest
from matplotlib.container import ErrorbarContainer

from costarnet import (
    ConfigError,
    PreconditionError,
    SpecificationError,
    UndefinedInputError,
)
from costarnet.ergm import Edges, NodeCov, NodeMatch, fit
from costarnet.graph import CollabNetwork, empty_network
from costarnet.periods import make_period, period_schedule
from costarnet.report import (
    INDEX_COLUMNS,
    SubgroupSpec,
    cross_coop_frame,
    cross_coop_table,
    cross_cooperation,
    describe,
    export_coefficient_summary,
    export_cross_coop_table,
    export_index_trend,
    export_model_table,
    export_network,
    export_period_summaries,
    index_axis_limit,
    index_figure,
    model_table_frame,
    render_index_svg,
)

if TYPE_CHECKING:
    from pathlib import Path

    from costarnet.ingest import Dataset
    from costarnet.types.results import ErgmFit, IndexResult

SVG = "{http://www.w3.org/2000/svg}"


def index_result(period: str, ratio: float, pair: str = "Mainland-HongKong") -> IndexResult:
    return {
        "period": period,
        "pair": pair,
        "observed": 10,
        "expected": 10 / ratio,
        "ratio": ratio,
        "ci_low": ratio * 0.9,
        "ci_high": ratio * 1.1,
        "replicates": 100,
    }


@pytest.fixture
def fits(two_region_network: CollabNetwork) -> dict[str, ErgmFit]:
    """Two period fits, the second without the homophily term."""
    full = fit(
        two_region_network,
        [Edges(), NodeMatch("region"), NodeCov("prev_cooperation_count")],
    )
    edges_only = fit(two_region_network, [Edges()])
    return {"1990-1993": full, "1994-1997": edges_only}


class TestDescribe:
    """Tests for one-period summaries."""

    def test_summary(self, two_region_network: CollabNetwork) -> None:
        """Test counts, shares and averages of the fixture."""
        summary = describe(two_region_network)
        assert summary["period"] == "1990-1993"
        assert summary["n_stars"] == 8
        assert summary["n_edges"] == 10
        assert summary["region_shares"] == {"Mainland": 50.0, "HongKong": 50.0}
        assert summary["average_degree"] == 2.5

    def test_ten_stars(self) -> None:
        """Test six Mainland and four HongKong stars with twelve edges."""
        chain = [(k, k + 1) for k in range(9)]
        edges = [*chain, (0, 2), (0, 9), (1, 6)]
        g = CollabNetwork.from_edges(edges, regions=["Mainland"] * 6 + ["HongKong"] * 4)
        summary = describe(g)
        assert summary["region_shares"] == {"Mainland": 60.0, "HongKong": 40.0}
        assert summary["average_degree"] == pytest.approx(2.4)

    def test_single_star(self) -> None:
        """Test a lone star has degree and clustering zero."""
        summary = describe(CollabNetwork.from_edges([], regions=["Mainland"]))
        assert summary["average_degree"] == 0.0
        assert summary["average_clustering"] == 0.0

    def test_requested_regions(self, two_region_network: CollabNetwork) -> None:
        """Test absent requested regions get a zero share."""
        summary = describe(two_region_network, regions=["Mainland", "HongKong", "Taiwan"])
        assert summary["region_shares"]["Taiwan"] == 0.0

    def test_global_clustering(self, triangle: CollabNetwork) -> None:
        """Test the global variant reports transitivity."""
        assert describe(triangle, clustering="global")["average_clustering"] == 1.0

    def test_empty_network(self) -> None:
        """Test an empty network cannot be described."""
        with pytest.raises(UndefinedInputError):
            describe(empty_network(make_period(1990, 1993)))

    def test_export(self, two_region_network: CollabNetwork, tmp_path: Path) -> None:
        """Test the summary CSV has one share column per region."""
        path = export_period_summaries(
            [describe(two_region_network)], ["Mainland", "HongKong"], tmp_path / "summary.csv"
        )
        frame = pd.read_csv(path)
        assert list(frame.columns) == [
            "period",
            "n_stars",
            "share_Mainland",
            "share_HongKong",
            "n_edges",
            "average_degree",
            "average_clustering",
        ]
        assert frame.loc[0, "n_edges"] == 10


class TestSubgroupSpec:
    """Tests for subgroup membership rules."""

    def test_invalid_quantile(self) -> None:
        """Test the fame quantile must lie strictly between 0 and 1."""
        with pytest.raises(ConfigError):
            SubgroupSpec(fame_quantile=1.0)

    def test_threshold(self) -> None:
        """Test the threshold is an observed value at the upper quantile."""
        assert SubgroupSpec(fame_quantile=0.25).fame_threshold([0, 1, 2, 3, 4, 5, 6, 7]) == 6.0
        assert SubgroupSpec().fame_threshold([]) == float("inf")

    def test_unknown_subgroup(self) -> None:
        """Test an unknown subgroup name is a config error."""
        with pytest.raises(ConfigError):
            SubgroupSpec().members("veterans", [], 0.0)


class TestCrossCoopTable:
    """Tests for mean cross-region cooperation by subgroup."""

    @pytest.fixture
    def table(self, tiny_dataset: Dataset) -> dict:
        """Table of the tiny dataset over 1990 and 1991."""
        return dict(
            cross_coop_table(tiny_dataset, period_schedule(1990, 1991, 1), "Mainland", "HongKong")
        )

    def test_rows(self, table: dict) -> None:
        """Test one row per period plus a totals row."""
        assert [row["period"] for row in table["rows"]] == ["1990", "1991"]
        assert table["total"]["period"] == "total"
        assert table["sides"] == ["Mainland", "HongKong"]

    def test_absent_region_blank(self, table: dict) -> None:
        """Test a period without Hong Kong stars has blank cells."""
        for subgroup in table["subgroups"]:
            for side in table["sides"]:
                cell = table["rows"][0]["cells"][subgroup][side]
                assert cell["mean"] is None
                assert cell["count"] == 0

    def test_cells(self, table: dict) -> None:
        """Test means, fame and generations in 1991."""
        cells = table["rows"][1]["cells"]
        assert cells["all"]["Mainland"] == {"mean": 2.0, "count": 2, "total": 4.0}
        assert cells["all"]["HongKong"] == {"mean": 2.0, "count": 2, "total": 4.0}
        assert cells["famous"]["Mainland"]["count"] == 2
        assert cells["famous"]["HongKong"]["mean"] is None
        assert cells["older"]["Mainland"]["mean"] == 3.0
        assert cells["older"]["HongKong"]["mean"] == 1.0
        assert cells["newer"]["Mainland"]["mean"] == 1.0
        assert cells["newer"]["HongKong"]["mean"] == 3.0

    def test_bipartite_totals(self, table: dict) -> None:
        """Test both sides of the all-stars column sum to the same cross weight."""
        for row in [*table["rows"], table["total"]]:
            cells = row["cells"]["all"]
            assert cells["Mainland"]["total"] == cells["HongKong"]["total"]

    def test_totals_pool_rows(self, table: dict) -> None:
        """Test totals pool sums and counts, not means."""
        total = table["total"]["cells"]["older"]["HongKong"]
        assert total == {"mean": 1.0, "count": 1, "total": 1.0}

    def test_cross_cooperation_weights(self) -> None:
        """Test one cross edge of weight two counts twice on both sides."""
        g = CollabNetwork.from_edges([(0, 1)], regions=["Mainland", "HongKong"], weights=[2])
        assert cross_cooperation(g, "Mainland", "HongKong") == [2.0, 2.0]

    def test_cross_cooperation_none(self) -> None:
        """Test within-region edges contribute nothing."""
        g = CollabNetwork.from_edges(
            [(0, 1), (2, 3)], regions=["Mainland", "Mainland", "HongKong", "HongKong"]
        )
        assert cross_cooperation(g, "Mainland", "HongKong") == [0.0] * 4

    def test_cross_cooperation_side_means(self) -> None:
        """Test three HongKong stars with 4, 6 and 2 cross ties shared by ten Mainland stars."""
        hk_degrees = [4, 6, 2]
        edges: list[tuple[int, int]] = []
        mainland = 0
        for h, degree in enumerate(hk_degrees):
            for _ in range(degree):
                edges.append((mainland % 10, 10 + h))
                mainland += 1
        g = CollabNetwork.from_edges(edges, regions=["Mainland"] * 10 + ["HongKong"] * 3)
        cross = cross_cooperation(g, "HongKong", "Mainland")
        assert sum(cross[10:]) / 3 == 4.0
        assert sum(cross[:10]) / 10 == pytest.approx(1.2)

    def test_famous_blank_without_lag(self, tiny_dataset: Dataset) -> None:
        """Test fame is undefined in a first period without lead-in."""
        table = cross_coop_table(
            tiny_dataset, period_schedule(1991, 1991, 1), "Mainland", "HongKong"
        )
        cells = table["rows"][0]["cells"]
        assert cells["famous"]["Mainland"]["mean"] is None
        assert cells["all"]["Mainland"]["mean"] == 2.0

    def test_lead_in_row(self, tiny_dataset: Dataset) -> None:
        """Test the lead-in window gets its own first row and feeds fame."""
        table = cross_coop_table(
            tiny_dataset,
            [make_period(1991, 1991)],
            "Mainland",
            "HongKong",
            lead_in=make_period(1990, 1990),
        )
        assert [row["period"] for row in table["rows"]] == ["1990", "1991"]
        assert table["rows"][1]["cells"]["famous"]["Mainland"]["count"] == 2

    def test_same_region_rejected(self, tiny_dataset: Dataset) -> None:
        """Test both sides must differ."""
        with pytest.raises(PreconditionError):
            cross_coop_table(tiny_dataset, period_schedule(1990, 1991, 1), "Taiwan", "Taiwan")

    def test_export(self, table: dict, tmp_path: Path) -> None:
        """Test blank cells are written as empty fields."""
        frame = cross_coop_frame(table)  # type: ignore[arg-type]
        assert frame.columns[:3].tolist() == ["period", "all.Mainland.mean", "all.Mainland.count"]
        assert len(frame) == 3

        path = export_cross_coop_table(table, tmp_path / "subgroups.csv")  # type: ignore[arg-type]
        first_row = path.read_text(encoding="utf-8").splitlines()[1]
        assert first_row.startswith("1990,,0,,0")


class TestIndexTrend:
    """Tests for index CSVs and charts."""

    def test_csv(self, tmp_path: Path) -> None:
        """Test one CSV row per period in input order."""
        results = [index_result("1990", 0.8), index_result("1991", 1.2)]
        path = export_index_trend(results, tmp_path / "index.csv")
        frame = pd.read_csv(path, dtype={"period": str})
        assert frame["period"].tolist() == ["1990", "1991"]
        assert frame.columns.tolist() == [
            "period",
            "observed",
            "expected",
            "ratio",
            "ci_low",
            "ci_high",
        ]

    def test_csv_rows(self, tmp_path: Path) -> None:
        """Test three periods give a header and three lines, none give a header only."""
        results = [index_result(str(y), 1.0) for y in (1990, 1991, 1992)]
        lines = export_index_trend(results, tmp_path / "a.csv").read_text(encoding="utf-8")
        assert len(lines.splitlines()) == 4
        empty = export_index_trend([], tmp_path / "b.csv").read_text(encoding="utf-8")
        assert empty.splitlines() == [",".join(INDEX_COLUMNS)]

    def test_axis_limit(self) -> None:
        """Test the y axis runs from zero to a tenth above the largest ratio."""
        results = [index_result("1990", 0.8), index_result("1991", 1.2)]
        assert index_axis_limit({"a": results}) == pytest.approx(1.32)
        fig = index_figure({"a": results})
        assert fig.axes[0].get_ylim() == pytest.approx((0.0, 1.32))

    def test_axis_limit_without_ratios(self) -> None:
        """Test an all-zero series falls back to a unit axis."""
        flat = index_result("1990", 1.0)
        flat["ratio"] = 0.0
        assert index_axis_limit({"a": [flat]}) == 1.0
        assert index_axis_limit({}) == 1.0

    def test_single_pair(self, tmp_path: Path) -> None:
        """Test mixing region pairs is rejected."""
        results = [index_result("1990", 0.8), index_result("1991", 1.2, pair="Mainland-Taiwan")]
        with pytest.raises(PreconditionError):
            export_index_trend(results, tmp_path / "index.csv")

    def test_figure_error_bars(self) -> None:
        """Test each period gets its point estimate and its band as error bars."""
        results = [index_result("1990", 0.8), index_result("1991", 1.2)]
        # an infinite bound is cut at the top of the axis
        results[1]["ci_high"] = math.inf
        ax = index_figure({"Mainland-HongKong": results}, title="Index").axes[0]
        assert ax.get_title() == "Index"
        assert [t.get_text() for t in ax.get_xticklabels()] == ["1990", "1991"]
        assert len(ax.containers) == 1
        container = ax.containers[0]
        assert isinstance(container, ErrorbarContainer)
        data_line, _, (bars,) = container.lines
        assert np.asarray(data_line.get_ydata()).tolist() == pytest.approx([0.8, 1.2])
        segments = bars.get_segments()
        assert [float(seg[0][1]) for seg in segments] == pytest.approx([0.72, 1.08])
        assert [float(seg[1][1]) for seg in segments] == pytest.approx([0.88, 1.32])

    def test_figure_skips_infinite_ratio(self) -> None:
        """Test a period with an infinite ratio is left out of its line."""
        results = [index_result("1990", 0.8), index_result("1991", math.inf)]
        container = index_figure({"a": results}).axes[0].containers[0]
        assert isinstance(container, ErrorbarContainer)
        assert np.asarray(container.lines[0].get_xdata()).tolist() == [0]

    def test_svg(self, tmp_path: Path) -> None:
        """Test the chart has one identified line per pair and the null line."""
        results = [index_result("1990", 0.8), index_result("1991", 1.2)]
        export_index_trend(results, tmp_path / "index.csv", svg_path=tmp_path / "index.svg")
        root = ET.parse(tmp_path / "index.svg").getroot()
        assert root.tag == f"{SVG}svg"
        assert root.find(f".//{SVG}g[@id='series-Mainland-HongKong']") is not None
        assert root.find(f".//{SVG}g[@id='null-line']") is not None

    def test_svg_series(self, tmp_path: Path) -> None:
        """Test every series gets its own line and legend entry."""
        series = {
            "Mainland-HongKong": [index_result("1990", 0.8)],
            "Mainland-Taiwan": [index_result("1990", 0.5, pair="Mainland-Taiwan")],
        }
        ax = index_figure(series).axes[0]
        legend = ax.get_legend()
        assert legend is not None
        assert [t.get_text() for t in legend.get_texts()] == list(series)

        root = ET.parse(render_index_svg(series, tmp_path / "trend.svg")).getroot()
        for name in series:
            assert root.find(f".//{SVG}g[@id='series-{name}']") is not None

    def test_svg_deterministic(self, tmp_path: Path) -> None:
        """Test equal input gives byte-identical charts."""
        results = [index_result("1990", 0.8), index_result("1991", 1.2)]
        first = render_index_svg({"a": results}, tmp_path / "a.svg")
        second = render_index_svg({"a": results}, tmp_path / "b.svg")
        assert first.read_bytes() == second.read_bytes()


class TestModelTables:
    """Tests for coefficient summaries and model tables."""

    def test_coefficient_summary(self, fits: dict[str, ErgmFit], tmp_path: Path) -> None:
        """Test a missing term names the offending period."""
        with pytest.raises(SpecificationError, match="1994-1997"):
            export_coefficient_summary(fits, tmp_path / "coef.csv")

        path = export_coefficient_summary(
            {"1990-1993": fits["1990-1993"]}, tmp_path / "coef.csv"
        )
        frame = pd.read_csv(path)
        assert frame.columns.tolist() == ["period", "coefficient", "se"]
        assert frame.loc[0, "coefficient"] == pytest.approx(fits["1990-1993"]["theta"][1])

    def test_coefficient_summary_order(self, tmp_path: Path) -> None:
        """Test summary rows follow the order of the fits."""
        values = {
            "1990-1993": 1.1,
            "1994-1997": 1.3,
            "1998-2001": 1.81,
            "2002-2005": 1.71,
            "2006-2009": 1.59,
        }
        fits = {
            period: {
                "terms": ["edges", "nodematch.region"],
                "theta": [-5.0, value],
                "se": [0.1, 0.05],
            }
            for period, value in values.items()
        }
        path = export_coefficient_summary(fits, tmp_path / "coef.csv")  # type: ignore[arg-type]
        frame = pd.read_csv(path)
        assert frame["period"].tolist() == list(values)
        assert frame["coefficient"].tolist() == list(values.values())
        assert frame["se"].tolist() == [0.05] * 5

    def test_model_table(self, fits: dict[str, ErgmFit]) -> None:
        """Test term rows come first and absent terms are blank."""
        frame = model_table_frame(fits)
        assert frame.columns.tolist() == ["row", "1990-1993", "1994-1997"]
        assert frame["row"].tolist()[:3] == [
            "edges",
            "nodematch.region",
            "nodecov.prev_cooperation_count",
        ]
        assert frame["row"].tolist()[3:] == [
            "aic",
            "bic",
            "null_deviance",
            "residual_deviance",
            "k",
            "n_dyads",
        ]
        assert frame.loc[1, "1994-1997"] == ""
        coefficient = fits["1990-1993"]["theta"][0]
        assert frame.loc[0, "1990-1993"].startswith(f"{coefficient:.4f}")

    def test_model_table_export(self, fits: dict[str, ErgmFit], tmp_path: Path) -> None:
        """Test the model table is written as CSV."""
        path = export_model_table(fits, tmp_path / "models.csv")
        assert path.read_text(encoding="utf-8").startswith("row,1990-1993,1994-1997\n")


class TestExportNetwork:
    """Tests for node and edge lists."""

    def test_min_degree(self, two_region_network: CollabNetwork, tmp_path: Path) -> None:
        """Test nodes at or below the minimum degree are left out with their edges."""
        nodes_path, edges_path = export_network(
            two_region_network, tmp_path / "nodes.csv", tmp_path / "edges.csv", min_degree=2
        )
        nodes = pd.read_csv(nodes_path)
        edges = pd.read_csv(edges_path)
        assert (nodes["degree"] > 2).all()
        kept = set(nodes["star_id"])
        assert set(edges["source"]) <= kept
        assert set(edges["target"]) <= kept
        assert "region" in nodes.columns

    def test_all_nodes(self, two_region_network: CollabNetwork, tmp_path: Path) -> None:
        """Test the default keeps every node with an edge."""
        nodes_path, edges_path = export_network(
            two_region_network, tmp_path / "nodes.csv", tmp_path / "edges.csv"
        )
        assert len(pd.read_csv(nodes_path)) == 8
        assert len(pd.read_csv(edges_path)) == 10
