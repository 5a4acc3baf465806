"""Exact maximum likelihood for dyad-independent models.

With dyad-independent terms the model likelihood factorizes over dyads
into a logistic regression of edge indicators on change statistics, so
the exact MLE is found by Newton/IRLS iterations accumulated block by
block over the dyads.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import linalg, stats
from scipy.special import expit

from .._blocks import DyadBlockHelper
from .._exceptions import PreconditionError, RankDeficiencyError, SeparationError
from .._executor import SerialRunner
from .design import block_covariates, build_design, row_offset

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from .._executor import TaskRunner
    from ..graph import CollabNetwork
    from ..types.results import ErgmFit
    from .design import DesignMatrix
    from .terms import Term

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 50
SCORE_TOLERANCE = 1e-8
LOGLIK_TOLERANCE = 1e-10
DIVERGENCE_BOUND = 30.0
MAX_STEP_HALVINGS = 30
RANK_TOLERANCE = 1e-9

_SIGNIFICANCE_CODES = ((0.001, "***"), (0.01, "**"), (0.05, "*"), (0.1, "."))


@dataclass(frozen=True)
class _BlockTask:
    terms: tuple[Term, ...]
    encoded: tuple[NDArray[np.float64], ...]
    n_nodes: int
    start: int
    stop: int
    response: NDArray[np.bool_]
    theta: NDArray[np.float64] | None


@dataclass
class _Accumulated:
    loglik: float
    score: NDArray[np.float64]
    information: NDArray[np.float64]


def _design_block(task: _BlockTask) -> NDArray[np.float64]:
    i, j = DyadBlockHelper.dyads_in_rows(task.n_nodes, task.start, task.stop)
    return block_covariates(task.terms, task.encoded, i, j)


def _accumulate_block(task: _BlockTask) -> tuple[float, NDArray[np.float64], NDArray[np.float64]]:
    x = _design_block(task)
    y = task.response.astype(np.float64)
    assert task.theta is not None
    eta = x @ task.theta
    p = expit(eta)
    loglik = float(np.sum(y * eta - np.logaddexp(0.0, eta)))
    score = x.T @ (y - p)
    information = (x * (p * (1.0 - p))[:, None]).T @ x
    return loglik, score, information


def _scan_block(task: _BlockTask) -> tuple[NDArray[np.float64], ...]:
    x = _design_block(task)
    y = task.response
    k = x.shape[1]
    inf = np.full(k, np.inf)
    ones, zeros = x[y], x[~y]
    return (
        x.T @ x,
        ones.min(axis=0) if len(ones) else inf,
        ones.max(axis=0) if len(ones) else -inf,
        zeros.min(axis=0) if len(zeros) else inf,
        zeros.max(axis=0) if len(zeros) else -inf,
    )


class _Accumulator:
    """Runs block tasks through a runner and reduces them in block order."""

    def __init__(self, design: DesignMatrix, runner: TaskRunner) -> None:
        self.design = design
        self.runner = runner

    def _tasks(self, theta: NDArray[np.float64] | None) -> list[_BlockTask]:
        design = self.design
        return [
            _BlockTask(
                terms=tuple(design.terms),
                encoded=tuple(design.encoded),
                n_nodes=design.n_nodes,
                start=start,
                stop=stop,
                response=design.response[
                    row_offset(start, design.n_nodes) : row_offset(stop, design.n_nodes)
                ],
                theta=theta,
            )
            for start, stop in design.bounds
        ]

    def scan(self) -> tuple[NDArray[np.float64], ...]:
        k = len(self.design.columns)
        gram = np.zeros((k, k))
        min1, max1 = np.full(k, np.inf), np.full(k, -np.inf)
        min0, max0 = np.full(k, np.inf), np.full(k, -np.inf)
        for part in self.runner.map(_scan_block, self._tasks(None)):
            gram += part[0]
            min1, max1 = np.minimum(min1, part[1]), np.maximum(max1, part[2])
            min0, max0 = np.minimum(min0, part[3]), np.maximum(max0, part[4])
        return gram, min1, max1, min0, max0

    def __call__(self, theta: NDArray[np.float64]) -> _Accumulated:
        k = len(theta)
        total = _Accumulated(0.0, np.zeros(k), np.zeros((k, k)))
        for loglik, score, information in self.runner.map(
            _accumulate_block, self._tasks(theta)
        ):
            total.loglik += loglik
            total.score += score
            total.information += information
        return total


def _check_rank(gram: NDArray[np.float64], columns: Sequence[str]) -> None:
    scale = np.sqrt(np.diag(gram))
    zero = [columns[c] for c in range(len(columns)) if scale[c] == 0]
    if zero:
        raise RankDeficiencyError(
            f"Columns are identically zero: {', '.join(zero)}", columns=zero
        )
    normalized = gram / np.outer(scale, scale)
    _, r, pivot = linalg.qr(normalized, pivoting=True)
    diagonal = np.abs(np.diag(r))
    rank = int(np.sum(diagonal > RANK_TOLERANCE * diagonal[0]))
    if rank < len(columns):
        collinear = [columns[c] for c in sorted(pivot[rank:])]
        raise RankDeficiencyError(
            f"Design matrix has rank {rank} < {len(columns)} columns; "
            f"collinear: {', '.join(collinear)}",
            columns=collinear,
        )


def _check_separation(
    columns: Sequence[str],
    n_edges: int,
    n_dyads: int,
    bounds: tuple[NDArray[np.float64], ...],
) -> None:
    if n_edges == 0 or n_edges == n_dyads:
        state = "no" if n_edges == 0 else "every"
        raise SeparationError(
            f"Network has {state} edges; the '{columns[0]}' coefficient is infinite",
            term=columns[0],
        )
    min1, max1, min0, max0 = bounds
    for c, name in enumerate(columns):
        constant = min(min1[c], min0[c]) == max(max1[c], max0[c])
        if constant:
            continue
        if max1[c] <= min0[c] or max0[c] <= min1[c]:
            raise SeparationError(
                f"Column '{name}' separates edges from non-edges; its MLE is infinite",
                term=name,
            )


def significance_code(p_value: float) -> str:
    """R-style star code: ``***`` < 0.001, ``**`` < 0.01, ``*`` < 0.05, ``.`` < 0.1."""
    for bound, code in _SIGNIFICANCE_CODES:
        if p_value < bound:
            return code
    return ""


def model_selection_scores(
    residual_deviance: float, k: int, n_dyads: int
) -> tuple[float, float]:
    """``(aic, bic)`` = ``(D + 2k, D + k ln N)``.

    Example:
        >>> aic, bic = model_selection_scores(65017.0, 12, 767_000)
        >>> aic
        65041.0
    """
    return residual_deviance + 2 * k, residual_deviance + k * math.log(n_dyads)


def null_deviance(n_dyads: int) -> float:
    """Deviance of the all-zero model, where every dyad has probability 1/2."""
    return 2.0 * math.log(2.0) * n_dyads


def log_likelihood(
    g: CollabNetwork,
    terms: Sequence[Term],
    theta: Sequence[float] | NDArray[np.float64],
    *,
    dyad_cap: int | None = None,
) -> float:
    """Dyad-factorized log-likelihood ``sum(y * eta - log(1 + exp(eta)))``."""
    design = build_design(g, terms, dyad_cap=dyad_cap)
    theta = np.asarray(theta, dtype=np.float64)
    if len(theta) != len(design.columns):
        raise PreconditionError(
            f"theta has {len(theta)} entries for {len(design.columns)} columns"
        )
    if design.n_dyads == 0:
        return 0.0
    return _Accumulator(design, SerialRunner())(theta).loglik


def fit(
    g: CollabNetwork,
    terms: Sequence[Term],
    *,
    runner: TaskRunner | None = None,
    dyad_cap: int | None = None,
    block_dyads: int | None = None,
    max_iterations: int = MAX_ITERATIONS,
) -> ErgmFit:
    """Fit a dyad-independent model to ``g`` by maximum likelihood.

    Newton steps on the dyadic logistic log-likelihood, halved while they
    decrease it, until ``max|score| < 1e-8`` or the relative log-likelihood
    change drops below ``1e-10``. Standard errors come from the inverse
    observed information at the optimum.

    Args:
        g: Observed network
        terms: Model terms; level-less factors are expanded against ``g``
        runner: Executes the per-block accumulations
        dyad_cap: Largest admissible ``C(n, 2)``; ``COSTARNET_DYAD_CAP`` when omitted
        block_dyads: Dyads per accumulation block; ``COSTARNET_DYAD_BLOCK`` when omitted
        max_iterations: Newton iteration limit

    Returns:
        The fit; ``converged`` is False when the iteration limit is reached.

    Raises:
        SeparationError: A column perfectly predicts the response, or a
            coefficient diverges past ``|theta| > 30``.
        RankDeficiencyError: Columns are linearly dependent.
        SizeGuardError: Too many dyads.
    """
    runner = runner or SerialRunner()
    design = build_design(g, terms, dyad_cap=dyad_cap, block_dyads=block_dyads)
    columns = design.columns
    k = len(columns)
    if k == 0:
        raise PreconditionError("The model has no terms")
    if design.n_dyads < 2:
        raise PreconditionError(f"Network {g.label} has fewer than two dyads")

    accumulate = _Accumulator(design, runner)
    gram, *bounds = accumulate.scan()
    _check_separation(columns, g.n_edges, design.n_dyads, tuple(bounds))
    _check_rank(gram, columns)

    theta = np.zeros(k)
    state = accumulate(theta)
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        if np.max(np.abs(state.score)) < SCORE_TOLERANCE:
            converged = True
            iterations -= 1
            break
        step = linalg.solve(state.information, state.score, assume_a="pos")
        t = 1.0
        candidate = theta + step
        trial = accumulate(candidate)
        for _ in range(MAX_STEP_HALVINGS):
            if trial.loglik >= state.loglik - 1e-12 * abs(state.loglik):
                break
            t *= 0.5
            candidate = theta + t * step
            trial = accumulate(candidate)
        change = abs(trial.loglik - state.loglik) / max(abs(state.loglik), 1e-300)
        theta, state = candidate, trial
        logger.debug(
            "IRLS iteration %d: loglik=%.10g max|score|=%.3g step=%g",
            iterations,
            state.loglik,
            float(np.max(np.abs(state.score))),
            t,
        )
        worst = int(np.argmax(np.abs(theta)))
        if abs(theta[worst]) > DIVERGENCE_BOUND:
            raise SeparationError(
                f"Coefficient of '{columns[worst]}' diverged to {theta[worst]:.3g}; "
                "the data are separated",
                term=columns[worst],
            )
        if np.max(np.abs(state.score)) < SCORE_TOLERANCE or (
            t == 1.0 and change < LOGLIK_TOLERANCE
        ):
            converged = True
            break

    covariance = linalg.inv(state.information)
    se = np.sqrt(np.clip(np.diag(covariance), 0.0, None))
    z = np.divide(theta, se, out=np.full(k, np.nan), where=se > 0)
    p_values = 2.0 * stats.norm.sf(np.abs(z))

    residual = -2.0 * state.loglik
    aic, bic = model_selection_scores(residual, k, design.n_dyads)
    if not converged:
        logger.warning(
            "Fit of %s did not converge in %d iterations", g.label, max_iterations
        )
    result: ErgmFit = {
        "terms": list(columns),
        "theta": [float(v) for v in theta],
        "se": [float(v) for v in se],
        "z": [float(v) for v in z],
        "p_values": [float(v) for v in p_values],
        "significance": [significance_code(float(p)) for p in p_values],
        "log_likelihood": state.loglik,
        "null_deviance": null_deviance(design.n_dyads),
        "residual_deviance": residual,
        "aic": aic,
        "bic": bic,
        "k": k,
        "n_dyads": design.n_dyads,
        "converged": converged,
        "iterations": iterations,
        "period": g.label,
    }
    logger.info(
        "Fitted %s: %d terms, %d dyads, deviance %.2f, AIC %.2f (%s after %d iterations)",
        g.label,
        k,
        design.n_dyads,
        residual,
        aic,
        "converged" if converged else "not converged",
        iterations,
    )
    return result


def fit_to_json(result: ErgmFit) -> str:
    """Deterministic JSON document of a fit."""
    return json.dumps(dict(result), indent=2, sort_keys=True) + "\n"
