"""Exact model distribution on tiny networks by full enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import logsumexp

from .._blocks import DyadBlockHelper
from .._exceptions import PreconditionError, SizeGuardError
from ..graph import CollabNetwork
from .statistics import compute_statistics
from .terms import resolve_terms

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from ..types.network import NodeAttributes
    from .terms import Term

MAX_ORACLE_NODES = 6


def graph_for_code(code: int, template: CollabNetwork) -> CollabNetwork:
    """Network whose edge set is bit ``d`` of ``code`` for lexicographic dyad ``d``."""
    n = template.n_nodes
    edges: list[tuple[int, int]] = []
    d = 0
    for i in range(n):
        for j in range(i + 1, n):
            if code >> d & 1:
                edges.append((i, j))
            d += 1
    return template.with_edges(edges)


def code_for_graph(g: CollabNetwork) -> int:
    """Inverse of :func:`graph_for_code`."""
    return sum(1 << DyadBlockHelper.dyad_index(u, v, g.n_nodes) for u, v in g.edges)


@dataclass
class NormalizerOracle:
    """Enumerates all ``2^C(n,2)`` graphs on ``n <= 6`` attributed nodes.

    Statistics are counted on every enumerated graph directly, so the
    normalizing constant does not rely on the dyad factorization.
    """

    attributes: Sequence[NodeAttributes]
    terms: Sequence[Term]
    theta: Sequence[float] | NDArray[np.float64]
    template: CollabNetwork = field(init=False)
    resolved: list[Term] = field(init=False)
    _statistics: NDArray[np.float64] | None = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.attributes)
        if n > MAX_ORACLE_NODES:
            raise SizeGuardError(
                f"Enumeration supports at most {MAX_ORACLE_NODES} nodes, got {n}",
                limit=MAX_ORACLE_NODES,
            )
        self.template = CollabNetwork.from_edges([], attributes=list(self.attributes))
        self.resolved = resolve_terms(self.terms, self.template)
        self.theta = np.asarray(self.theta, dtype=np.float64)
        if len(self.theta) != len(self.resolved):
            raise PreconditionError(
                f"theta has {len(self.theta)} entries for {len(self.resolved)} columns"
            )

    @property
    def n_nodes(self) -> int:
        return self.template.n_nodes

    @property
    def n_graphs(self) -> int:
        return 1 << DyadBlockHelper.dyad_count(self.n_nodes)

    def statistics(self) -> NDArray[np.float64]:
        """Statistic vectors of every graph, indexed by code."""
        if self._statistics is None:
            self._statistics = np.array(
                [
                    compute_statistics(graph_for_code(code, self.template), self.resolved)
                    for code in range(self.n_graphs)
                ]
            ).reshape(self.n_graphs, len(self.resolved))
        return self._statistics

    def log_weights(self) -> NDArray[np.float64]:
        """Unnormalized log-probabilities ``theta . g(y)``."""
        return self.statistics() @ np.asarray(self.theta)

    def log_normalizer(self) -> float:
        """``log k(theta)``."""
        return float(logsumexp(self.log_weights()))

    def probability(self, g: CollabNetwork) -> float:
        """Exact probability of ``g``; its nodes must match the oracle's."""
        weights = self.log_weights()
        return float(np.exp(weights[code_for_graph(g)] - logsumexp(weights)))


def oracle_distribution(oracle: NormalizerOracle) -> NDArray[np.float64]:
    """Exact probability of every graph, indexed by :func:`graph_for_code` code."""
    weights = oracle.log_weights()
    return np.exp(weights - logsumexp(weights))
