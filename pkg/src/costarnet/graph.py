"""Immutable co-starring network and its descriptive statistics."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import networkx as nx

from ._exceptions import PreconditionError, UndefinedInputError
from .periods import make_period

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from .types.common import PeriodSpec, Region
    from .types.network import NodeAttributes

NodeId = int
Edge = tuple[NodeId, NodeId]


def make_attributes(
    region: Region = "Mainland",
    *,
    birth_year: int | None = None,
    first_work_year: int = 1990,
    prev_cooperation_count: int = 0,
    prev_cross_region: bool = False,
    age_group: str = "unknown",
    cohort: str = "1990-1994",
) -> NodeAttributes:
    """Build a :class:`NodeAttributes` record with neutral defaults."""
    return {
        "region": region,
        "birth_year": birth_year,
        "first_work_year": first_work_year,
        "prev_cooperation_count": prev_cooperation_count,
        "prev_cross_region": prev_cross_region,
        "age_group": age_group,
        "cohort": cohort,
    }


class CollabNetwork:
    """Simple undirected co-starring graph of one analysis period.

    Nodes are dense integer ids ``0..n-1`` in construction order; each maps
    to a ``star_id`` and carries :class:`NodeAttributes`. Edges are stored
    as ``(i, j)`` with ``i < j`` in construction order, each with a weight
    counting the works the two stars share. Instances never change after
    construction; randomization and simulation build new networks.

    Example:
        >>> g = CollabNetwork.from_edges([(0, 1), (1, 2), (0, 2)])
        >>> degree_sequence(g)
        [2, 2, 2]
    """

    __slots__ = (
        "_adjacency",
        "_attributes",
        "_edges",
        "_node_index",
        "_period",
        "_star_ids",
        "_weights",
    )

    def __init__(
        self,
        period: PeriodSpec,
        star_ids: Sequence[str],
        attributes: Sequence[NodeAttributes],
        edges: Sequence[Edge],
        weights: Sequence[int] | None = None,
    ) -> None:
        if len(star_ids) != len(attributes):
            raise PreconditionError(
                f"{len(star_ids)} star ids but {len(attributes)} attribute records"
            )
        n = len(star_ids)
        node_index = {star_id: node for node, star_id in enumerate(star_ids)}
        if len(node_index) != n:
            raise PreconditionError("Star ids must be unique within a network")

        if weights is None:
            weights = [1] * len(edges)
        if len(weights) != len(edges):
            raise PreconditionError(
                f"{len(edges)} edges but {len(weights)} weights"
            )

        canonical: list[Edge] = []
        adjacency: list[set[NodeId]] = [set() for _ in range(n)]
        for (u, v), w in zip(edges, weights):
            if u == v:
                raise PreconditionError(f"Self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"Edge ({u}, {v}) references a missing node")
            if w < 1:
                raise PreconditionError(f"Edge ({u}, {v}) has weight {w} < 1")
            if v in adjacency[u]:
                raise PreconditionError(f"Duplicate edge ({u}, {v})")
            adjacency[u].add(v)
            adjacency[v].add(u)
            canonical.append((u, v) if u < v else (v, u))

        self._period = period
        self._star_ids = tuple(star_ids)
        self._attributes = tuple(attributes)
        self._edges = tuple(canonical)
        self._weights = tuple(int(w) for w in weights)
        self._adjacency = tuple(frozenset(a) for a in adjacency)
        self._node_index = node_index

    @classmethod
    def from_edges(
        cls,
        edges: Sequence[Edge],
        *,
        n: int | None = None,
        regions: Sequence[Region] | None = None,
        attributes: Sequence[NodeAttributes] | None = None,
        weights: Sequence[int] | None = None,
        period: PeriodSpec | None = None,
    ) -> CollabNetwork:
        """Convenience constructor with synthetic star ids ``"s0"``, ``"s1"``, ...

        The node count defaults to the largest endpoint plus one, or to the
        length of ``regions``/``attributes`` when given.
        """
        if n is None:
            if attributes is not None:
                n = len(attributes)
            elif regions is not None:
                n = len(regions)
            else:
                n = 1 + max((max(e) for e in edges), default=-1)
        if attributes is None:
            region_list = list(regions) if regions is not None else ["Mainland"] * n
            attributes = [make_attributes(r) for r in region_list]
        return cls(
            period or make_period(0, 0, "all"),
            [f"s{i}" for i in range(n)],
            attributes,
            edges,
            weights,
        )

    @property
    def period(self) -> PeriodSpec:
        return self._period

    @property
    def label(self) -> str:
        return self._period["label"]

    @property
    def n_nodes(self) -> int:
        return len(self._star_ids)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def star_ids(self) -> tuple[str, ...]:
        return self._star_ids

    @property
    def attributes(self) -> tuple[NodeAttributes, ...]:
        return self._attributes

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    def nodes(self) -> Iterator[tuple[NodeId, NodeAttributes]]:
        """Iterate ``(node_id, attributes)`` in node order."""
        return iter(enumerate(self._attributes))

    def node_of(self, star_id: str) -> NodeId:
        """Node id of a star; ``KeyError`` if absent."""
        return self._node_index[star_id]

    def neighbors(self, node: NodeId) -> frozenset[NodeId]:
        return self._adjacency[node]

    def degree(self, node: NodeId) -> int:
        return len(self._adjacency[node])

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return v in self._adjacency[u]

    def weight_map(self) -> dict[Edge, int]:
        """Edge-to-weight mapping."""
        return dict(zip(self._edges, self._weights))

    def attribute_values(self, name: str) -> list[Any]:
        """Values of one attribute in node order; ``KeyError`` if unknown."""
        return [attrs[name] for attrs in self._attributes]  # type: ignore[literal-required]

    def with_edges(
        self, edges: Sequence[Edge], weights: Sequence[int] | None = None
    ) -> CollabNetwork:
        """Same nodes and attributes, different edge set."""
        return CollabNetwork(self._period, self._star_ids, self._attributes, edges, weights)

    def with_attributes(self, attributes: Sequence[NodeAttributes]) -> CollabNetwork:
        """Same nodes and edges, different attributes."""
        return CollabNetwork(
            self._period, self._star_ids, attributes, self._edges, self._weights
        )

    def to_networkx(self) -> nx.Graph:
        """Convert to a :class:`networkx.Graph` with attributes and weights."""
        graph = nx.Graph(period=self.label)
        for node, attrs in enumerate(self._attributes):
            graph.add_node(node, star_id=self._star_ids[node], **attrs)
        graph.add_weighted_edges_from(
            (u, v, w) for (u, v), w in zip(self._edges, self._weights)
        )
        return graph

    def __repr__(self) -> str:
        return (
            f"CollabNetwork(period={self.label!r}, "
            f"nodes={self.n_nodes}, edges={self.n_edges})"
        )


def degree_sequence(g: CollabNetwork) -> list[int]:
    """Degree of every node, in node order."""
    return [g.degree(node) for node in range(g.n_nodes)]


def average_degree(g: CollabNetwork) -> float:
    """Mean degree ``2|E| / |V|``."""
    if g.n_nodes < 1:
        raise UndefinedInputError(f"Average degree of empty network '{g.label}'")
    return 2.0 * g.n_edges / g.n_nodes


def average_clustering(g: CollabNetwork) -> float:
    """Mean local clustering; nodes with degree below 2 contribute 0."""
    if g.n_nodes < 1:
        raise UndefinedInputError(f"Clustering of empty network '{g.label}'")
    return float(nx.average_clustering(g.to_networkx()))


def transitivity(g: CollabNetwork) -> float:
    """Global clustering: three times triangles over connected triples."""
    if g.n_nodes < 1:
        raise UndefinedInputError(f"Transitivity of empty network '{g.label}'")
    return float(nx.transitivity(g.to_networkx()))


def density(g: CollabNetwork) -> float:
    """Edge count over ``C(n, 2)``."""
    if g.n_nodes < 2:
        raise UndefinedInputError(
            f"Density needs at least 2 nodes, network '{g.label}' has {g.n_nodes}"
        )
    return g.n_edges / (g.n_nodes * (g.n_nodes - 1) / 2)


def empty_network(period: PeriodSpec) -> CollabNetwork:
    """Network with no nodes."""
    return CollabNetwork(period, [], [], [])
