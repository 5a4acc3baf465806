"""Dyad enumeration in lexicographic blocks."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from ._config import DEFAULT_DYAD_BLOCK

if TYPE_CHECKING:
    from collections.abc import Iterator

    from numpy.typing import NDArray


class DyadBlockHelper:
    """Helpers for walking the ``C(n, 2)`` dyads ``(i, j)``, ``i < j``.

    Dyads are ordered lexicographically, and blocks are contiguous ranges
    of rows ``i``, so summing per-block results in block order reproduces
    one fixed reduction order.
    """

    @staticmethod
    def dyad_count(n: int) -> int:
        """Number of unordered pairs among ``n`` nodes."""
        return n * (n - 1) // 2

    @staticmethod
    def dyad_index(i: int, j: int, n: int) -> int:
        """Lexicographic position of dyad ``(i, j)`` with ``i < j``."""
        return i * n - i * (i + 1) // 2 + (j - i - 1)

    @staticmethod
    def block_bounds(n: int, block_dyads: int = DEFAULT_DYAD_BLOCK) -> list[tuple[int, int]]:
        """Row ranges ``[start, stop)`` holding roughly ``block_dyads`` dyads each."""
        bounds: list[tuple[int, int]] = []
        start = 0
        filled = 0
        for row in range(n - 1):
            filled += n - 1 - row
            if filled >= block_dyads:
                bounds.append((start, row + 1))
                start = row + 1
                filled = 0
        if start < n - 1:
            bounds.append((start, n - 1))
        return bounds

    @staticmethod
    def dyads_in_rows(
        n: int, start: int, stop: int
    ) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
        """Endpoint arrays of every dyad whose first node lies in ``[start, stop)``."""
        rows = np.arange(start, stop, dtype=np.int64)
        counts = n - 1 - rows
        total = int(counts.sum())
        i = np.repeat(rows, counts)
        offsets = np.cumsum(counts) - counts
        within = np.arange(total, dtype=np.int64) - np.repeat(offsets, counts)
        return i, i + 1 + within


def iterate_dyad_blocks(
    n: int,
    block_dyads: int = DEFAULT_DYAD_BLOCK,
) -> Iterator[tuple[NDArray[np.int64], NDArray[np.int64]]]:
    """Yield ``(i, j)`` endpoint arrays block by block, in lexicographic order.

    Args:
        n: Number of nodes
        block_dyads: Approximate number of dyads per block

    Yields:
        Pairs of equal-length integer arrays
    """
    for start, stop in DyadBlockHelper.block_bounds(n, block_dyads):
        yield DyadBlockHelper.dyads_in_rows(n, start, stop)
