"""Network statistics and change statistics of dyad-independent terms."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .._exceptions import PreconditionError
from .terms import resolve_terms

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from ..graph import CollabNetwork
    from .terms import Term


def compute_statistics(g: CollabNetwork, terms: Sequence[Term]) -> NDArray[np.float64]:
    """Statistic vector ``g(y, X)`` of ``g``, one entry per resolved term.

    Example:
        >>> from costarnet.graph import CollabNetwork
        >>> from costarnet.ergm.terms import Edges
        >>> compute_statistics(CollabNetwork.from_edges([(0, 1), (1, 2), (0, 2)]), [Edges()])
        array([3.])
    """
    resolved = resolve_terms(terms, g)
    return np.array([term.statistic(g) for term in resolved], dtype=np.float64)


def change_statistics(
    g: CollabNetwork,
    terms: Sequence[Term],
    dyad: tuple[int, int],
) -> NDArray[np.float64]:
    """Change in the statistic vector from adding dyad ``(i, j)`` to ``g``.

    Computed from node attributes alone; the result does not depend on
    whether ``(i, j)`` is currently an edge.

    Raises:
        PreconditionError: ``i == j`` or a node is out of range.
    """
    i, j = dyad
    if i == j:
        raise PreconditionError(f"Dyad ({i}, {j}) is a self-pair")
    if not (0 <= i < g.n_nodes and 0 <= j < g.n_nodes):
        raise PreconditionError(f"Dyad ({i}, {j}) references a missing node")
    resolved = resolve_terms(terms, g)
    left = np.array([i], dtype=np.int64)
    right = np.array([j], dtype=np.int64)
    return np.array(
        [term.change(term.node_values(g), left, right)[0] for term in resolved],
        dtype=np.float64,
    )
