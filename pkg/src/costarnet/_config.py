"""Configuration management for costarnet."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Any

from ._exceptions import ConfigError
from .periods import validate_schedule
from .types.common import REGIONS

if TYPE_CHECKING:
    from .types.common import PeriodSpec, Region

# Default analysis configuration
DEFAULT_SEED = 20240101
DEFAULT_WORKERS = 1
DEFAULT_REPLICATES = 100
DEFAULT_SWAP_MULTIPLIER = 2.0
DEFAULT_MAX_CAST_SIZE = 200
DEFAULT_DYAD_CAP = 50_000_000
DEFAULT_DYAD_BLOCK = 1_000_000
DEFAULT_FAME_QUANTILE = 0.25
DEFAULT_GENERATION_CUTOFF = 1990

# 4-year model windows over 1990-2009, yearly index windows to 2014
DEFAULT_ERGM_SCHEDULE = (1990, 2009, 4)
DEFAULT_INDEX_SCHEDULE = (1990, 2014, 1)
DEFAULT_PAIR: tuple[Region, Region] = ("Mainland", "HongKong")
DEFAULT_DESCRIBE_REGIONS: tuple[Region, ...] = ("Mainland", "HongKong", "Taiwan")

# Module-level configuration (can be overridden)
seed: int = int(os.environ.get("COSTARNET_SEED", DEFAULT_SEED))
workers: int = int(os.environ.get("COSTARNET_WORKERS", DEFAULT_WORKERS))
replicates: int = int(os.environ.get("COSTARNET_REPLICATES", DEFAULT_REPLICATES))
swap_multiplier: float = float(
    os.environ.get("COSTARNET_SWAP_MULTIPLIER", DEFAULT_SWAP_MULTIPLIER)
)
max_cast_size: int = int(
    os.environ.get("COSTARNET_MAX_CAST_SIZE", DEFAULT_MAX_CAST_SIZE)
)
dyad_cap: int = int(os.environ.get("COSTARNET_DYAD_CAP", DEFAULT_DYAD_CAP))
dyad_block: int = int(os.environ.get("COSTARNET_DYAD_BLOCK", DEFAULT_DYAD_BLOCK))


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run depends on.

    Validated before any computation and written to ``config.json`` in the
    output directory. The worker count is not a field since it never changes
    results; ``out_dir`` is left out of the file so that identical runs into
    different directories produce identical trees.
    """

    command: str
    stars_path: str
    works_path: str
    cast_path: str
    out_dir: str
    regions: tuple[Region, ...]
    periods: tuple[PeriodSpec, ...]
    lead_in: PeriodSpec | None = None
    seed: int = DEFAULT_SEED
    replicates: int = DEFAULT_REPLICATES
    swap_multiplier: float = DEFAULT_SWAP_MULTIPLIER
    count_successful: bool = False
    mirror: bool = False
    terms: tuple[dict[str, Any], ...] | None = None
    fame_quantile: float = DEFAULT_FAME_QUANTILE
    generation_cutoff: int = DEFAULT_GENERATION_CUTOFF
    clustering: str = "local"
    export_networks: bool = False
    min_degree: int = 0
    gof_samples: int = 0
    dyad_cap: int = DEFAULT_DYAD_CAP
    max_cast_size: int = DEFAULT_MAX_CAST_SIZE

    def validate(self) -> RunConfig:
        """Check cross-field constraints, raising :class:`ConfigError`."""
        if not self.regions:
            raise ConfigError("At least one region is required")
        unknown = [r for r in self.regions if r not in REGIONS]
        if unknown:
            raise ConfigError(f"Unknown region label(s): {', '.join(unknown)}")
        if len(set(self.regions)) != len(self.regions):
            raise ConfigError("Regions must be distinct")
        if self.command in {"index", "ergm", "subgroups"} and len(self.regions) != 2:
            raise ConfigError(
                f"'{self.command}' needs exactly two regions, got {len(self.regions)}"
            )
        if not self.periods:
            raise ConfigError("The period schedule is empty")
        schedule = list(self.periods)
        if self.lead_in is not None:
            schedule.insert(0, self.lead_in)
        validate_schedule(schedule)
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"Seed must fit in 64 bits, got {self.seed}")
        if self.replicates < 1:
            raise ConfigError(f"replicates must be >= 1, got {self.replicates}")
        if self.swap_multiplier <= 0:
            raise ConfigError(
                f"swap multiplier must be positive, got {self.swap_multiplier}"
            )
        if not 0 < self.fame_quantile < 1:
            raise ConfigError(
                f"fame quantile must lie in (0, 1), got {self.fame_quantile}"
            )
        if self.clustering not in {"local", "global"}:
            raise ConfigError(f"Unknown clustering variant '{self.clustering}'")
        if self.min_degree < 0 or self.gof_samples < 0:
            raise ConfigError("min-degree and gof-samples must be non-negative")
        if self.dyad_cap < 1 or self.max_cast_size < 2:
            raise ConfigError("dyad cap must be >= 1 and max cast size >= 2")
        return self

    def to_dict(self) -> dict[str, Any]:
        """Plain-data form used for ``config.json``."""
        data = asdict(self)
        del data["out_dir"]
        data["regions"] = list(self.regions)
        data["periods"] = [dict(p) for p in self.periods]
        data["terms"] = None if self.terms is None else [dict(t) for t in self.terms]
        return data

    def to_json(self) -> str:
        """Deterministic JSON serialization."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
