"""Dyad-level design matrix of a dyad-independent model."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from typing import TYPE_CHECKING, NamedTuple, overload

import numpy as np

from .. import _config
from .._blocks import DyadBlockHelper
from .._exceptions import SizeGuardError
from .terms import resolve_terms

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from ..graph import CollabNetwork
    from .terms import Term

logger = logging.getLogger(__name__)


class DyadRow(NamedTuple):
    """One dyad ``(i, j)``, ``i < j``: edge indicator and change statistics."""

    i: int
    j: int
    response: bool
    covariates: tuple[float, ...]


def row_offset(row: int, n: int) -> int:
    """Index of the first dyad whose lower endpoint is ``row``."""
    return row * n - row * (row + 1) // 2


def block_covariates(
    terms: Sequence[Term],
    encoded: Sequence[NDArray[np.float64]],
    i: NDArray[np.int64],
    j: NDArray[np.int64],
) -> NDArray[np.float64]:
    """Change-statistic matrix of the dyads ``(i[k], j[k])``, one column per term."""
    out = np.empty((len(i), len(terms)), dtype=np.float64)
    for col, (term, values) in enumerate(zip(terms, encoded)):
        out[:, col] = term.change(values, i, j)
    return out


def response_vector(g: CollabNetwork) -> NDArray[np.bool_]:
    """Edge indicators of all ``C(n, 2)`` dyads in lexicographic order."""
    response = np.zeros(DyadBlockHelper.dyad_count(g.n_nodes), dtype=bool)
    if g.n_edges:
        edges = np.asarray(g.edges, dtype=np.int64)
        response[DyadBlockHelper.dyad_index(edges[:, 0], edges[:, 1], g.n_nodes)] = True
    return response


class DesignMatrix(Sequence[DyadRow]):
    """Lazily evaluated sequence of :class:`DyadRow` over every dyad of a network.

    Rows follow lexicographic dyad order. Covariates are computed per block
    of rows on demand, so the full matrix is never held in memory unless
    :meth:`matrix` is called.
    """

    def __init__(
        self,
        g: CollabNetwork,
        terms: Sequence[Term],
        *,
        block_dyads: int | None = None,
    ) -> None:
        self.network = g
        self.terms = list(terms)
        self.columns = [t.name for t in self.terms]
        self.n_nodes = g.n_nodes
        self.n_dyads = DyadBlockHelper.dyad_count(g.n_nodes)
        self.encoded = [t.node_values(g) for t in self.terms]
        self.response = response_vector(g)
        self.bounds = DyadBlockHelper.block_bounds(
            g.n_nodes, _config.dyad_block if block_dyads is None else block_dyads
        )
        self._offsets = np.array(
            [row_offset(r, self.n_nodes) for r in range(max(self.n_nodes - 1, 0))],
            dtype=np.int64,
        )

    def __len__(self) -> int:
        return self.n_dyads

    @overload
    def __getitem__(self, index: int) -> DyadRow: ...

    @overload
    def __getitem__(self, index: slice) -> list[DyadRow]: ...

    def __getitem__(self, index: int | slice) -> DyadRow | list[DyadRow]:
        if isinstance(index, slice):
            return [self[k] for k in range(*index.indices(self.n_dyads))]
        if index < 0:
            index += self.n_dyads
        if not 0 <= index < self.n_dyads:
            raise IndexError(f"Dyad index {index} out of range")
        i = int(np.searchsorted(self._offsets, index, side="right")) - 1
        j = i + 1 + index - int(self._offsets[i])
        x = block_covariates(
            self.terms,
            self.encoded,
            np.array([i], dtype=np.int64),
            np.array([j], dtype=np.int64),
        )
        return DyadRow(i, j, bool(self.response[index]), tuple(float(v) for v in x[0]))

    def __iter__(self) -> Iterator[DyadRow]:
        for start, stop in self.bounds:
            i, j = DyadBlockHelper.dyads_in_rows(self.n_nodes, start, stop)
            x, y = self.block(start, stop)
            for k in range(len(i)):
                yield DyadRow(
                    int(i[k]), int(j[k]), bool(y[k]), tuple(float(v) for v in x[k])
                )

    def block(
        self, start: int, stop: int
    ) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
        """Covariates and responses of the dyads with lower endpoint in ``[start, stop)``."""
        i, j = DyadBlockHelper.dyads_in_rows(self.n_nodes, start, stop)
        lo = row_offset(start, self.n_nodes)
        hi = row_offset(stop, self.n_nodes)
        return block_covariates(self.terms, self.encoded, i, j), self.response[lo:hi]

    def blocks(self) -> Iterator[tuple[NDArray[np.float64], NDArray[np.bool_]]]:
        """Yield ``(X, y)`` per block in dyad order."""
        for start, stop in self.bounds:
            yield self.block(start, stop)

    def matrix(self) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
        """Full ``(X, y)``; only for networks small enough to hold in memory."""
        if self.n_dyads == 0:
            return np.empty((0, len(self.terms))), self.response
        return self.block(0, self.n_nodes - 1)


def build_design(
    g: CollabNetwork,
    terms: Sequence[Term],
    *,
    dyad_cap: int | None = None,
    block_dyads: int | None = None,
) -> DesignMatrix:
    """Design matrix of ``g`` under ``terms``, one row per dyad.

    Raises:
        SizeGuardError: ``C(n, 2)`` exceeds ``dyad_cap``.
        SpecificationError: A term does not resolve against ``g``.
    """
    if dyad_cap is None:
        dyad_cap = _config.dyad_cap
    n_dyads = DyadBlockHelper.dyad_count(g.n_nodes)
    if n_dyads > dyad_cap:
        raise SizeGuardError(
            f"Network {g.label} has {n_dyads} dyads, above the cap of {dyad_cap}",
            limit=dyad_cap,
        )
    design = DesignMatrix(g, resolve_terms(terms, g), block_dyads=block_dyads)
    logger.debug(
        "Design for %s: %d dyads x %d columns in %d blocks",
        g.label,
        design.n_dyads,
        len(design.columns),
        len(design.bounds),
    )
    return design
