"""Tests for the graph-library interop helpers."""

from __future__ import annotations

import sys
from types import ModuleType
from typing import TYPE_CHECKING, Any

import networkx as nx
import pytest

from costarnet import ConfigError
from costarnet.graph import CollabNetwork, make_attributes
from costarnet.interop import to_igraph, to_networkx, write_graph

if TYPE_CHECKING:
    from pathlib import Path


class _FakeIgraphGraph:
    def __init__(self, n: int, edges: list[tuple[int, int]]) -> None:
        self.n = n
        self.edge_list = edges
        self.vs: dict[str, Any] = {}
        self.es: dict[str, Any] = {}


class TestToNetworkx:
    """``to_networkx`` carries attributes and can drop missing values."""

    def test_missing_values(self) -> None:
        g = CollabNetwork.from_edges(
            [(0, 1)], attributes=[make_attributes(birth_year=1960), make_attributes()]
        )
        assert to_networkx(g).nodes[1]["birth_year"] is None
        assert "birth_year" not in to_networkx(g, drop_missing=True).nodes[1]
        assert to_networkx(g, drop_missing=True).nodes[0]["birth_year"] == 1960


class TestWriteGraph:
    """``write_graph`` infers the format from the suffix."""

    def test_graphml(self, two_region_network: CollabNetwork, tmp_path: Path) -> None:
        path = write_graph(two_region_network, tmp_path / "net.graphml")
        graph = nx.read_graphml(path)
        assert graph.number_of_nodes() == 8
        assert graph.number_of_edges() == 10
        assert graph.nodes["1"]["region"] == "HongKong"

    def test_gexf(self, two_region_network: CollabNetwork, tmp_path: Path) -> None:
        path = write_graph(two_region_network, tmp_path / "net.gexf")
        assert nx.read_gexf(path).number_of_edges() == 10

    def test_unknown_suffix(self, triangle: CollabNetwork, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="graphml"):
            write_graph(triangle, tmp_path / "net.dot")


class TestToIgraph:
    """``to_igraph`` is lazy and raises ImportError when missing."""

    def test_missing_igraph_raises_import_error(
        self, triangle: CollabNetwork, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """When ``igraph`` is not installed, we raise with an install hint."""
        monkeypatch.setitem(sys.modules, "igraph", None)  # type: ignore[arg-type]
        with pytest.raises(ImportError, match="pip install costarnet\\[igraph\\]"):
            to_igraph(triangle)

    def test_builds_graph(
        self, two_region_network: CollabNetwork, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """When ``igraph`` is available, nodes, attributes and weights are set."""
        fake = ModuleType("igraph")
        fake.Graph = _FakeIgraphGraph  # type: ignore[attr-defined]
        monkeypatch.setitem(sys.modules, "igraph", fake)

        graph = to_igraph(two_region_network)
        assert graph.n == 8
        assert graph.edge_list == list(two_region_network.edges)
        assert graph.vs["region"] == two_region_network.attribute_values("region")
        assert graph.vs["star_id"] == list(two_region_network.star_ids)
        assert graph.es["weight"] == [1] * 10
