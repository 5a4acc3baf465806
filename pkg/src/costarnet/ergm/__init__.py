"""Dyad-independent exponential random graph models."""

from .design import DesignMatrix, DyadRow, build_design
from .fit import (
    fit,
    fit_to_json,
    log_likelihood,
    model_selection_scores,
    null_deviance,
    significance_code,
)
from .oracle import NormalizerOracle, code_for_graph, graph_for_code, oracle_distribution
from .simulate import (
    MetropolisSampler,
    goodness_of_fit,
    sample_dyad_independent,
    simulate,
)
from .statistics import change_statistics, compute_statistics
from .terms import (
    Edges,
    NodeCov,
    NodeFactor,
    NodeMatch,
    Term,
    TermSpec,
    default_terms,
    drop_lagged_terms,
    parse_terms,
    resolve_terms,
    term_names,
)

__all__ = [
    "DesignMatrix",
    "DyadRow",
    "Edges",
    "MetropolisSampler",
    "NodeCov",
    "NodeFactor",
    "NodeMatch",
    "NormalizerOracle",
    "Term",
    "TermSpec",
    "build_design",
    "change_statistics",
    "code_for_graph",
    "compute_statistics",
    "default_terms",
    "drop_lagged_terms",
    "fit",
    "fit_to_json",
    "goodness_of_fit",
    "graph_for_code",
    "log_likelihood",
    "model_selection_scores",
    "null_deviance",
    "oracle_distribution",
    "parse_terms",
    "resolve_terms",
    "sample_dyad_independent",
    "significance_code",
    "simulate",
    "term_names",
]
