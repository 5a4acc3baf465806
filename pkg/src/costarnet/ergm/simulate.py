"""Sampling networks from a fitted or given model."""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import expit

from .._blocks import DyadBlockHelper
from .._exceptions import PreconditionError
from ..graph import CollabNetwork
from .design import build_design, response_vector
from .statistics import compute_statistics

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from numpy.typing import NDArray

    from ..types.common import PeriodSpec
    from ..types.network import NodeAttributes
    from ..types.results import TermCheck
    from .terms import Term

logger = logging.getLogger(__name__)

# Proposals drawn per batch of random numbers
_DRAW_BATCH = 65_536


def _change_matrix(
    template: CollabNetwork,
    terms: Sequence[Term],
    theta: Sequence[float] | NDArray[np.float64],
    dyad_cap: int | None,
) -> tuple[list[Term], NDArray[np.float64], NDArray[np.float64]]:
    design = build_design(template, terms, dyad_cap=dyad_cap)
    theta = np.asarray(theta, dtype=np.float64)
    if len(theta) != len(design.columns):
        raise PreconditionError(
            f"theta has {len(theta)} entries but the terms give "
            f"{len(design.columns)} columns ({', '.join(design.columns)})"
        )
    delta, _ = design.matrix()
    return design.terms, delta, theta


def _edges_of(state: NDArray[np.bool_], n: int) -> list[tuple[int, int]]:
    if n < 2:
        return []
    i, j = DyadBlockHelper.dyads_in_rows(n, 0, n - 1)
    present = np.flatnonzero(state)
    return list(zip(i[present].tolist(), j[present].tolist()))


class MetropolisSampler:
    """Dyad-toggle Metropolis chain whose stationary law is the model.

    Each step proposes toggling a uniformly chosen dyad and accepts with
    probability ``min(1, exp(s * theta . delta))``, ``s = +1`` for adding
    an edge and ``-1`` for removing one.

    Example:
        >>> sampler = MetropolisSampler(template, [Edges()], [-1.0], rng)
        >>> for state in sampler.run(burn_in=1000, n_samples=10, thin=100):
        ...     density = state.mean()
    """

    def __init__(
        self,
        template: CollabNetwork,
        terms: Sequence[Term],
        theta: Sequence[float] | NDArray[np.float64],
        rng: np.random.Generator,
        *,
        initial: CollabNetwork | None = None,
        dyad_cap: int | None = None,
    ) -> None:
        self.template = template.with_edges([])
        self.terms, self.delta, self.theta = _change_matrix(
            self.template, terms, theta, dyad_cap
        )
        self.rng = rng
        self.n_dyads = DyadBlockHelper.dyad_count(template.n_nodes)
        self._log_odds: list[float] = (self.delta @ self.theta).tolist()
        start = response_vector(initial) if initial is not None else np.zeros(self.n_dyads, bool)
        self._state: list[bool] = start.tolist()
        self.proposed = 0
        self.accepted = 0

    @classmethod
    def from_attributes(
        cls,
        attributes: Sequence[NodeAttributes],
        terms: Sequence[Term],
        theta: Sequence[float] | NDArray[np.float64],
        rng: np.random.Generator,
        *,
        period: PeriodSpec | None = None,
    ) -> MetropolisSampler:
        """Chain over graphs on nodes carrying ``attributes``, started empty."""
        template = CollabNetwork.from_edges([], attributes=list(attributes), period=period)
        return cls(template, terms, theta, rng)

    @property
    def state(self) -> NDArray[np.bool_]:
        """Current edge indicators in lexicographic dyad order (a copy)."""
        return np.array(self._state, dtype=bool)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else math.nan

    def step(self, n_steps: int) -> None:
        """Advance the chain by ``n_steps`` proposals."""
        if self.n_dyads == 0 or n_steps <= 0:
            return
        state = self._state
        log_odds = self._log_odds
        remaining = n_steps
        accepted = 0
        while remaining:
            size = min(remaining, _DRAW_BATCH)
            dyads = self.rng.integers(self.n_dyads, size=size).tolist()
            log_u = np.log(self.rng.random(size)).tolist()
            for d, lu in zip(dyads, log_u):
                ratio = -log_odds[d] if state[d] else log_odds[d]
                if lu < ratio:
                    state[d] = not state[d]
                    accepted += 1
            remaining -= size
        self.proposed += n_steps
        self.accepted += accepted

    def run(
        self, burn_in: int, n_samples: int, thin: int = 1
    ) -> Iterator[NDArray[np.bool_]]:
        """Discard ``burn_in`` proposals, then yield ``n_samples`` states ``thin`` apart."""
        if thin < 1:
            raise PreconditionError(f"thin must be >= 1, got {thin}")
        self.step(burn_in)
        for _ in range(n_samples):
            self.step(thin)
            yield self.state

    def network(self, state: NDArray[np.bool_] | None = None) -> CollabNetwork:
        """Network of ``state`` (default: the current state)."""
        if state is None:
            state = self.state
        return self.template.with_edges(_edges_of(state, self.template.n_nodes))


def simulate(
    n_nodes: int,
    attributes: Sequence[NodeAttributes],
    terms: Sequence[Term],
    theta: Sequence[float] | NDArray[np.float64],
    burn_in: int,
    n_samples: int,
    rng: np.random.Generator,
    *,
    thin: int = 1,
    period: PeriodSpec | None = None,
) -> list[CollabNetwork]:
    """Draw ``n_samples`` networks from the model by Metropolis sampling.

    Args:
        n_nodes: Number of nodes; must equal ``len(attributes)``
        attributes: Node attributes
        terms: Model terms
        theta: Coefficients, one per resolved term column
        burn_in: Proposals discarded before the first sample
        n_samples: Number of networks returned
        rng: Random generator
        thin: Proposals between consecutive samples

    Returns:
        Sampled networks in chain order.
    """
    if n_nodes != len(attributes):
        raise PreconditionError(
            f"n_nodes={n_nodes} but {len(attributes)} attribute records given"
        )
    sampler = MetropolisSampler.from_attributes(attributes, terms, theta, rng, period=period)
    samples = [sampler.network(s) for s in sampler.run(burn_in, n_samples, thin)]
    logger.debug(
        "Simulated %d networks on %d nodes, acceptance rate %.3f",
        n_samples,
        n_nodes,
        sampler.acceptance_rate,
    )
    return samples


def sample_dyad_independent(
    attributes: Sequence[NodeAttributes],
    terms: Sequence[Term],
    theta: Sequence[float] | NDArray[np.float64],
    rng: np.random.Generator,
    *,
    period: PeriodSpec | None = None,
    dyad_cap: int | None = None,
) -> CollabNetwork:
    """Exact draw: every dyad is an independent ``Bernoulli(expit(theta . delta))``."""
    template = CollabNetwork.from_edges([], attributes=list(attributes), period=period)
    _, delta, theta_arr = _change_matrix(template, terms, theta, dyad_cap)
    present = rng.random(len(delta)) < expit(delta @ theta_arr)
    return template.with_edges(_edges_of(present, template.n_nodes))


def goodness_of_fit(
    g: CollabNetwork,
    terms: Sequence[Term],
    theta: Sequence[float] | NDArray[np.float64],
    n_samples: int,
    rng: np.random.Generator,
    *,
    burn_in: int | None = None,
    thin: int | None = None,
) -> list[TermCheck]:
    """Compare observed statistics with networks simulated from ``theta``.

    The chain starts at ``g``; by default it burns in for ``C(n, 2)``
    proposals and thins by a quarter of that. The p-value is the two-sided
    empirical tail probability of the observed value.
    """
    if n_samples < 1:
        raise PreconditionError(f"n_samples must be >= 1, got {n_samples}")
    sampler = MetropolisSampler(g, terms, theta, rng, initial=g)
    burn_in = sampler.n_dyads if burn_in is None else burn_in
    thin = max(1, sampler.n_dyads // 4) if thin is None else thin

    observed = compute_statistics(g, sampler.terms)
    simulated = np.array(
        [state @ sampler.delta for state in sampler.run(burn_in, n_samples, thin)]
    )
    checks: list[TermCheck] = []
    for col, term in enumerate(sampler.terms):
        values = simulated[:, col]
        tail = min(np.mean(values <= observed[col]), np.mean(values >= observed[col]))
        checks.append(
            {
                "term": term.name,
                "observed": float(observed[col]),
                "simulated_mean": float(values.mean()),
                "simulated_sd": float(values.std(ddof=1)) if n_samples > 1 else 0.0,
                "p_value": float(min(1.0, 2.0 * tail)),
            }
        )
    logger.info(
        "Goodness of fit for %s: %d samples, acceptance rate %.3f",
        g.label,
        n_samples,
        sampler.acceptance_rate,
    )
    return checks
