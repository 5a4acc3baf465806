"""Dyad-independent model terms."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from .._exceptions import SpecificationError

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from ..graph import CollabNetwork

logger = logging.getLogger(__name__)

# Attributes carrying information from the previous period
LAGGED_ATTRIBUTES = frozenset({"prev_cooperation_count", "prev_cross_region"})


def _sorted_levels(values: Sequence[Any]) -> list[Any]:
    return sorted(set(values), key=lambda v: (str(type(v).__name__), str(v)))


class Term(ABC):
    """A network statistic whose change for one dyad ignores all other edges.

    ``statistic`` counts the term on a whole network; ``node_values`` and
    ``change`` give the change statistic of many dyads at once.
    """

    attribute: str | None = None

    @property
    @abstractmethod
    def name(self) -> str:
        """Column name, e.g. ``nodematch.region``."""
        pass

    def validate(self, g: CollabNetwork) -> None:
        """Raise :class:`SpecificationError` if ``g`` cannot support the term."""
        if self.attribute is not None:
            self.values(g)

    def values(self, g: CollabNetwork) -> list[Any]:
        """Attribute values in node order."""
        if self.attribute is None:
            return [None] * g.n_nodes
        try:
            return g.attribute_values(self.attribute)
        except KeyError as exc:
            raise SpecificationError(
                f"Term '{self.name}' references unknown attribute '{self.attribute}'"
            ) from exc

    @abstractmethod
    def statistic(self, g: CollabNetwork) -> float:
        """Value of the statistic on ``g``."""
        pass

    @abstractmethod
    def node_values(self, g: CollabNetwork) -> NDArray[np.float64]:
        """Per-node encoding consumed by :meth:`change`."""
        pass

    @abstractmethod
    def change(
        self,
        encoded: NDArray[np.float64],
        i: NDArray[np.int64],
        j: NDArray[np.int64],
    ) -> NDArray[np.float64]:
        """Change statistic of dyads ``(i[k], j[k])``."""
        pass

    @property
    def lagged(self) -> bool:
        return self.attribute in LAGGED_ATTRIBUTES

    def to_dict(self) -> dict[str, Any]:
        """JSON form accepted by :func:`parse_terms`."""
        data: dict[str, Any] = {"kind": type(self).__name__.lower()}
        if self.attribute is not None:
            data["attribute"] = self.attribute
        return data


@dataclass(frozen=True)
class Edges(Term):
    """Number of edges."""

    @property
    def name(self) -> str:
        return "edges"

    def statistic(self, g: CollabNetwork) -> float:
        return float(g.n_edges)

    def node_values(self, g: CollabNetwork) -> NDArray[np.float64]:
        return np.zeros(g.n_nodes)

    def change(
        self,
        encoded: NDArray[np.float64],
        i: NDArray[np.int64],
        j: NDArray[np.int64],
    ) -> NDArray[np.float64]:
        return np.ones(len(i))


@dataclass(frozen=True)
class NodeFactor(Term):
    """Edge endpoints at ``level`` of a categorical attribute.

    Each edge adds one per endpoint at the level. ``level=None`` stands for
    every observed level except ``reference`` and is expanded by
    :func:`resolve_terms`.
    """

    attribute: str
    level: Any = None
    reference: Any = None

    @property
    def name(self) -> str:
        return f"nodefactor.{self.attribute}.{self.level}"

    def validate(self, g: CollabNetwork) -> None:
        if self.level is None:
            raise SpecificationError(
                f"nodefactor.{self.attribute} has no level; resolve the term list first"
            )
        if self.level == self.reference:
            raise SpecificationError(
                f"Term '{self.name}' uses its reference level as a dummy"
            )
        values = self.values(g)
        if self.level not in values:
            raise SpecificationError(
                f"Level {self.level!r} of '{self.attribute}' is not observed "
                f"in network {g.label}"
            )

    def statistic(self, g: CollabNetwork) -> float:
        values = self.values(g)
        return float(
            sum((values[u] == self.level) + (values[v] == self.level) for u, v in g.edges)
        )

    def node_values(self, g: CollabNetwork) -> NDArray[np.float64]:
        return np.array([v == self.level for v in self.values(g)], dtype=np.float64)

    def change(
        self,
        encoded: NDArray[np.float64],
        i: NDArray[np.int64],
        j: NDArray[np.int64],
    ) -> NDArray[np.float64]:
        return encoded[i] + encoded[j]

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        if self.level is not None:
            data["level"] = self.level
        if self.reference is not None:
            data["reference"] = self.reference
        return data


@dataclass(frozen=True)
class NodeCov(Term):
    """Sum over edges of the endpoints' numeric attribute values."""

    attribute: str

    @property
    def name(self) -> str:
        return f"nodecov.{self.attribute}"

    def validate(self, g: CollabNetwork) -> None:
        self.node_values(g)

    def statistic(self, g: CollabNetwork) -> float:
        values = self.node_values(g)
        return float(sum(values[u] + values[v] for u, v in g.edges))

    def node_values(self, g: CollabNetwork) -> NDArray[np.float64]:
        values = self.values(g)
        if any(v is None or isinstance(v, str) for v in values):
            raise SpecificationError(
                f"Term '{self.name}' needs a numeric attribute without missing values"
            )
        return np.asarray(values, dtype=np.float64)

    def change(
        self,
        encoded: NDArray[np.float64],
        i: NDArray[np.int64],
        j: NDArray[np.int64],
    ) -> NDArray[np.float64]:
        return encoded[i] + encoded[j]


@dataclass(frozen=True)
class NodeMatch(Term):
    """Edges whose endpoints share the attribute value."""

    attribute: str

    @property
    def name(self) -> str:
        return f"nodematch.{self.attribute}"

    def statistic(self, g: CollabNetwork) -> float:
        values = self.values(g)
        return float(sum(values[u] == values[v] for u, v in g.edges))

    def node_values(self, g: CollabNetwork) -> NDArray[np.float64]:
        codes: dict[Any, int] = {}
        return np.array(
            [codes.setdefault(v, len(codes)) for v in self.values(g)], dtype=np.float64
        )

    def change(
        self,
        encoded: NDArray[np.float64],
        i: NDArray[np.int64],
        j: NDArray[np.int64],
    ) -> NDArray[np.float64]:
        return (encoded[i] == encoded[j]).astype(np.float64)


TermSpec = Edges | NodeFactor | NodeCov | NodeMatch

_TERM_KINDS: dict[str, type[Term]] = {
    "edges": Edges,
    "nodefactor": NodeFactor,
    "nodecov": NodeCov,
    "nodematch": NodeMatch,
}


def parse_terms(raw: Sequence[Mapping[str, Any]]) -> list[Term]:
    """Build terms from their JSON form.

    Example:
        >>> [t.name for t in parse_terms([{"kind": "edges"},
        ...                               {"kind": "nodematch", "attribute": "region"}])]
        ['edges', 'nodematch.region']
    """
    terms: list[Term] = []
    for index, item in enumerate(raw):
        if not isinstance(item, Mapping):
            raise SpecificationError(f"Term #{index} is not an object")
        kind = str(item.get("kind", "")).lower()
        if kind not in _TERM_KINDS:
            raise SpecificationError(
                f"Term #{index} has unknown kind '{item.get('kind')}'; "
                f"expected one of {', '.join(_TERM_KINDS)}"
            )
        if kind == "edges":
            terms.append(Edges())
            continue
        attribute = item.get("attribute")
        if not isinstance(attribute, str) or not attribute:
            raise SpecificationError(f"Term #{index} ({kind}) needs an 'attribute'")
        if kind == "nodefactor":
            terms.append(
                NodeFactor(attribute, level=item.get("level"), reference=item.get("reference"))
            )
        elif kind == "nodecov":
            terms.append(NodeCov(attribute))
        else:
            terms.append(NodeMatch(attribute))
    return terms


def resolve_terms(terms: Sequence[Term], g: CollabNetwork) -> list[Term]:
    """Expand level-less factors against ``g`` and validate every term.

    A ``NodeFactor`` without ``level`` becomes one dummy per observed level
    other than the reference, in sorted order; without a reference the
    first sorted level is the reference, as it is when the given reference
    is not observed in ``g``.

    Raises:
        SpecificationError: Unknown attribute or level, or duplicate columns.
    """
    resolved: list[Term] = []
    for term in terms:
        if isinstance(term, NodeFactor) and term.level is None:
            levels = _sorted_levels(term.values(g))
            reference = term.reference
            if reference is not None and reference not in levels and levels:
                logger.warning(
                    "Reference %r of nodefactor.%s is not observed in %s; using %r",
                    reference,
                    term.attribute,
                    g.label,
                    levels[0],
                )
                reference = None
            if reference is None and levels:
                reference = levels[0]
            expanded = [
                NodeFactor(term.attribute, level=level, reference=reference)
                for level in levels
                if level != reference
            ]
            if not expanded:
                logger.warning(
                    "nodefactor.%s has no non-reference level in %s; term dropped",
                    term.attribute,
                    g.label,
                )
            resolved.extend(expanded)
        else:
            resolved.append(term)

    names: set[str] = set()
    for term in resolved:
        term.validate(g)
        if term.name in names:
            raise SpecificationError(f"Term '{term.name}' appears twice")
        names.add(term.name)
    return resolved


def drop_lagged_terms(terms: Sequence[Term]) -> tuple[list[Term], list[Term]]:
    """Split terms into ``(kept, dropped)`` by whether they use lagged attributes."""
    kept = [t for t in terms if not t.lagged]
    dropped = [t for t in terms if t.lagged]
    return kept, dropped


def default_terms(reference_region: str = "Mainland") -> list[Term]:
    """Terms of the default model structure.

    Edges, age-group and cohort dummies, region dummies against
    ``reference_region``, lagged popularity, lagged cross-region experience
    and regional homophily.
    """
    return [
        Edges(),
        NodeFactor("age_group", reference="under20"),
        NodeFactor("cohort", reference="before1980"),
        NodeFactor("region", reference=reference_region),
        NodeCov("prev_cooperation_count"),
        NodeFactor("prev_cross_region", reference=False),
        NodeMatch("region"),
    ]


def term_names(terms: Sequence[Term]) -> list[str]:
    return [t.name for t in terms]
