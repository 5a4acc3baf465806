"""
costarnet: temporal co-starring networks across regions.

Builds per-period collaboration networks from star, work and cast tables,
measures cross-region cooperation against a degree-preserving null model
and fits dyad-independent exponential random graph models.

Example:
    >>> import costarnet
    >>> with costarnet.CostarNet.from_files("stars.csv", "works.csv", "cast.csv") as net:
    ...     schedule = costarnet.period_schedule(1990, 2014, 1)
    ...     for result in net.index.trend(schedule, "Mainland", "HongKong"):
    ...         print(result["period"], round(result["ratio"], 3))
"""

from ._client import CostarNet
from ._config import RunConfig, dyad_cap, max_cast_size, replicates, seed, workers
from ._exceptions import (
    ConfigError,
    CostarNetError,
    DanglingReferenceError,
    DataError,
    DataFileNotFoundError,
    DegenerateNullError,
    MalformedRowError,
    NumericError,
    PreconditionError,
    RankDeficiencyError,
    SeparationError,
    SizeGuardError,
    SpecificationError,
    UndefinedInputError,
    UnknownRegionError,
    exit_code_for,
)
from ._version import __version__
from .graph import (
    CollabNetwork,
    average_clustering,
    average_degree,
    degree_sequence,
    density,
    transitivity,
)
from .ingest import Dataset, derive_attributes, load_dataset, project
from .interop import to_igraph, to_networkx, write_graph
from .null_model import (
    SwapConfig,
    cross_region_index,
    cross_region_observed,
    double_edge_swap,
    randomize,
    ratio_band,
)
from .periods import lead_in_period, load_schedule, make_period, period_schedule
from .report import (
    SubgroupSpec,
    cross_coop_table,
    describe,
    export_coefficient_summary,
    export_cross_coop_table,
    export_index_trend,
    export_model_table,
    export_network,
    index_figure,
    render_index_svg,
)
from .synthetic import generate_dataset, write_dataset

# Re-export commonly used types
from .types import (
    REGIONS,
    CrossCoopTable,
    ErgmFit,
    IndexResult,
    NodeAttributes,
    PeriodSpec,
    PeriodSummary,
    Region,
    TermCheck,
)

__all__ = [
    "REGIONS",
    "CollabNetwork",
    "ConfigError",
    "CostarNet",
    "CostarNetError",
    "CrossCoopTable",
    "DanglingReferenceError",
    "DataError",
    "DataFileNotFoundError",
    "Dataset",
    "DegenerateNullError",
    "ErgmFit",
    "IndexResult",
    "MalformedRowError",
    "NodeAttributes",
    "NumericError",
    "PeriodSpec",
    "PeriodSummary",
    "PreconditionError",
    "RankDeficiencyError",
    "Region",
    "RunConfig",
    "SeparationError",
    "SizeGuardError",
    "SpecificationError",
    "SubgroupSpec",
    "SwapConfig",
    "TermCheck",
    "UndefinedInputError",
    "UnknownRegionError",
    "__version__",
    "average_clustering",
    "average_degree",
    "cross_coop_table",
    "cross_region_index",
    "cross_region_observed",
    "degree_sequence",
    "density",
    "derive_attributes",
    "describe",
    "double_edge_swap",
    "dyad_cap",
    "exit_code_for",
    "export_coefficient_summary",
    "export_cross_coop_table",
    "export_index_trend",
    "export_model_table",
    "export_network",
    "generate_dataset",
    "index_figure",
    "lead_in_period",
    "load_dataset",
    "load_schedule",
    "make_period",
    "max_cast_size",
    "period_schedule",
    "project",
    "randomize",
    "ratio_band",
    "render_index_svg",
    "replicates",
    "seed",
    "to_igraph",
    "to_networkx",
    "transitivity",
    "workers",
    "write_dataset",
    "write_graph",
]
