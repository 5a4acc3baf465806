"""Degree-preserving randomization and the cross-region cooperation index."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ._config import DEFAULT_REPLICATES, DEFAULT_SEED, DEFAULT_SWAP_MULTIPLIER
from ._exceptions import ConfigError, DegenerateNullError, PreconditionError
from ._executor import SerialRunner
from ._seeding import derive_rng

if TYPE_CHECKING:
    from ._executor import TaskRunner
    from .graph import CollabNetwork, Edge
    from .types.common import Region
    from .types.results import IndexResult

logger = logging.getLogger(__name__)

# Attempts per target swap before giving up when only successes count
MAX_TRIES_FACTOR = 100


@dataclass(frozen=True)
class SwapConfig:
    """Randomization settings.

    ``swap_multiplier * N`` swaps are attempted on a network with ``N``
    edges; with ``count_successful`` only accepted swaps count towards the
    target. Replicate ``r`` draws from a stream derived from ``(seed, r)``.
    """

    swap_multiplier: float = DEFAULT_SWAP_MULTIPLIER
    replicates: int = DEFAULT_REPLICATES
    seed: int = DEFAULT_SEED
    count_successful: bool = False

    def __post_init__(self) -> None:
        if not self.swap_multiplier > 0:
            raise ConfigError(f"swap_multiplier must be > 0, got {self.swap_multiplier}")
        if self.replicates < 1:
            raise ConfigError(f"replicates must be >= 1, got {self.replicates}")

    def target_swaps(self, n_edges: int) -> int:
        return math.ceil(self.swap_multiplier * n_edges)


class SwapGraph:
    """Mutable working copy of a network's edge set for rewiring."""

    __slots__ = ("adjacency", "edges")

    def __init__(self, n_nodes: int, edges: list[Edge]) -> None:
        self.edges: list[tuple[int, int]] = list(edges)
        self.adjacency: list[set[int]] = [set() for _ in range(n_nodes)]
        for u, v in self.edges:
            self.adjacency[u].add(v)
            self.adjacency[v].add(u)

    @classmethod
    def from_network(cls, g: CollabNetwork) -> SwapGraph:
        return cls(g.n_nodes, list(g.edges))

    def degrees(self) -> list[int]:
        return [len(neighbors) for neighbors in self.adjacency]

    def canonical_edges(self) -> list[Edge]:
        return [(u, v) if u < v else (v, u) for u, v in self.edges]

    def try_swap(self, first: int, second: int, flip: bool) -> bool:
        """Rewire edges ``first=(a,b)`` and ``second=(c,d)`` into ``(a,c), (b,d)``.

        ``flip`` reverses the second edge to ``(d,c)`` first. The swap is
        refused, leaving the graph unchanged, when the edges share a node
        or a new edge already exists.
        """
        a, b = self.edges[first]
        c, d = self.edges[second]
        if flip:
            c, d = d, c
        if a == c or a == d or b == c or b == d:
            return False
        adjacency = self.adjacency
        if c in adjacency[a] or d in adjacency[b]:
            return False
        adjacency[a].discard(b)
        adjacency[b].discard(a)
        adjacency[c].discard(d)
        adjacency[d].discard(c)
        adjacency[a].add(c)
        adjacency[c].add(a)
        adjacency[b].add(d)
        adjacency[d].add(b)
        self.edges[first] = (a, c)
        self.edges[second] = (b, d)
        return True


def _draw_attempts(
    rng: np.random.Generator, n_edges: int, size: int
) -> tuple[list[int], list[int], list[bool]]:
    first = rng.integers(n_edges, size=size)
    second = rng.integers(n_edges - 1, size=size)
    second = second + (second >= first)
    flips = rng.random(size) < 0.5
    return first.tolist(), second.tolist(), flips.tolist()


def double_edge_swap(sg: SwapGraph, rng: np.random.Generator) -> bool:
    """Attempt one degree-preserving swap of two distinct random edges.

    Returns:
        True when the graph was rewired, False when the attempt was refused
        (or the graph has fewer than two edges).
    """
    if len(sg.edges) < 2:
        return False
    first, second, flips = _draw_attempts(rng, len(sg.edges), 1)
    return sg.try_swap(first[0], second[0], flips[0])


def randomize(
    g: CollabNetwork,
    cfg: SwapConfig,
    rng: np.random.Generator,
) -> CollabNetwork:
    """Degree-preserving randomization of ``g``.

    Performs ``ceil(swap_multiplier * N)`` swap attempts on a copy (or that
    many accepted swaps with ``count_successful``). Nodes, attributes and
    every node's degree are unchanged; edge weights of the copy are 1.
    """
    sg = SwapGraph.from_network(g)
    m = len(sg.edges)
    if m < 2:
        return g.with_edges(sg.canonical_edges())

    target = cfg.target_swaps(m)
    accepted = 0
    if not cfg.count_successful:
        first, second, flips = _draw_attempts(rng, m, target)
        for e1, e2, flip in zip(first, second, flips):
            accepted += sg.try_swap(e1, e2, flip)
        attempts = target
    else:
        attempts = 0
        max_attempts = target * MAX_TRIES_FACTOR
        while accepted < target and attempts < max_attempts:
            size = min(target - accepted, max_attempts - attempts)
            first, second, flips = _draw_attempts(rng, m, size)
            for e1, e2, flip in zip(first, second, flips):
                attempts += 1
                if sg.try_swap(e1, e2, flip):
                    accepted += 1
                    if accepted == target:
                        break
        if accepted < target:
            logger.warning(
                "Only %d of %d swaps accepted after %d attempts on %s",
                accepted,
                target,
                attempts,
                g.label,
            )
    logger.debug("Randomized %s: %d/%d swaps accepted", g.label, accepted, attempts)
    return g.with_edges(sg.canonical_edges())


def cross_region_observed(g: CollabNetwork, r1: Region, r2: Region) -> int:
    """Number of edges joining a star of ``r1`` with a star of ``r2``."""
    if r1 == r2:
        raise PreconditionError(f"Cross-region count needs two regions, got {r1} twice")
    regions = g.attribute_values("region")
    pair = {r1, r2}
    return sum(
        1 for u, v in g.edges if regions[u] != regions[v] and {regions[u], regions[v]} == pair
    )


def _replicate_counts(
    task: tuple[CollabNetwork, Region, Region, SwapConfig, list[int]],
) -> list[int]:
    g, r1, r2, cfg, replicates = task
    return [
        cross_region_observed(randomize(g, cfg, derive_rng(cfg.seed, r)), r1, r2)
        for r in replicates
    ]


def null_counts(
    g: CollabNetwork,
    r1: Region,
    r2: Region,
    cfg: SwapConfig,
    *,
    runner: TaskRunner | None = None,
) -> np.ndarray:
    """Cross-region counts of ``cfg.replicates`` randomized copies, in replicate order."""
    runner = runner or SerialRunner()
    chunk = max(1, math.ceil(cfg.replicates / (4 * runner.workers)))
    indices = list(range(cfg.replicates))
    tasks = [(g, r1, r2, cfg, indices[i : i + chunk]) for i in range(0, len(indices), chunk)]
    counts = [c for block in runner.map(_replicate_counts, tasks) for c in block]
    return np.asarray(counts, dtype=np.int64)


def ratio_band(observed: int, counts: np.ndarray) -> tuple[float, float]:
    """2.5 and 97.5 percentiles of ``observed / X_r`` over replicate counts.

    A zero count gives an infinite ratio, or zero when ``observed`` is zero.
    """
    values = np.asarray(counts, dtype=np.float64)
    ratios = np.divide(
        float(observed),
        values,
        out=np.full(values.shape, math.inf if observed else 0.0),
        where=values > 0,
    )
    # interpolating towards an infinite ratio yields nan
    with np.errstate(invalid="ignore"):
        band = np.percentile(ratios, [2.5, 97.5])
    low, high = np.nan_to_num(band, nan=math.inf, posinf=math.inf)
    return float(low), float(high)


def cross_region_index(
    g: CollabNetwork,
    r1: Region,
    r2: Region,
    cfg: SwapConfig,
    *,
    runner: TaskRunner | None = None,
) -> IndexResult:
    """Observed over expected cross-region edges, O/E.

    ``E`` is the mean cross-region count over randomized replicates.
    The band is the 2.5-97.5 percentile range of ``O / X_r`` over replicate
    counts ``X_r``.

    Raises:
        PreconditionError: ``g`` lacks stars of one of the regions.
        DegenerateNullError: The null expectation is zero.
    """
    present = set(g.attribute_values("region"))
    missing = [r for r in (r1, r2) if r not in present]
    if missing:
        raise PreconditionError(
            f"Network {g.label} has no stars from {', '.join(missing)}"
        )

    observed = cross_region_observed(g, r1, r2)
    counts = null_counts(g, r1, r2, cfg, runner=runner)
    expected = float(counts.mean())
    if expected <= 0:
        raise DegenerateNullError(
            f"Null expectation of {r1}-{r2} edges is zero in period {g.label}",
            period=g.label,
        )

    ci_low, ci_high = ratio_band(observed, counts)
    result: IndexResult = {
        "period": g.label,
        "pair": f"{r1}-{r2}",
        "observed": observed,
        "expected": expected,
        "ratio": observed / expected,
        "ci_low": float(ci_low),
        "ci_high": float(ci_high),
        "replicates": cfg.replicates,
    }
    logger.info(
        "Index %s %s: O=%d E=%.3f ratio=%.4f",
        result["pair"],
        g.label,
        observed,
        expected,
        result["ratio"],
    )
    return result
