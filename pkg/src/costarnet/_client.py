"""Main analysis facade for costarnet."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from . import _config
from ._context import AnalysisContext
from ._executor import make_runner
from .ingest import load_dataset
from .resources.index import Index
from .resources.models import Models
from .resources.networks import Networks
from .resources.subgroups import Subgroups

if TYPE_CHECKING:
    from pathlib import Path

    from .ingest import Dataset


class CostarNet:
    """Analysis session over one star/work/cast dataset.

    Example:
        >>> import costarnet
        >>> with costarnet.CostarNet.from_files("stars.csv", "works.csv", "cast.csv") as net:
        ...     schedule = costarnet.period_schedule(1990, 2009, 4)
        ...     trend = net.index.trend(schedule, "Mainland", "HongKong")
        ...     fits, _ = net.models.fit_periods(schedule, "Mainland", "HongKong")
    """

    def __init__(
        self,
        dataset: Dataset,
        *,
        seed: int | None = None,
        workers: int | None = None,
        progress: bool = False,
    ) -> None:
        """Initialize the session.

        Args:
            dataset: Loaded, validated dataset
            seed: Run seed. If not provided, uses ``_config.seed`` at call
                  time (COSTARNET_SEED by default).
            workers: Worker processes for replicates and dyad blocks.
                     Defaults to COSTARNET_WORKERS (1 = run in-process).
            progress: Show progress bars on stderr
        """
        self._dataset = dataset
        self._seed = _config.seed if seed is None else seed
        self._runner = make_runner(_config.workers if workers is None else workers)
        self._context = AnalysisContext(
            dataset=dataset, runner=self._runner, seed=self._seed, progress=progress
        )

        # Initialize resources
        self._networks: Networks | None = None
        self._index: Index | None = None
        self._models: Models | None = None
        self._subgroups: Subgroups | None = None

    @classmethod
    def from_files(
        cls,
        stars_path: str | Path,
        works_path: str | Path,
        cast_path: str | Path,
        *,
        max_cast_size: int | None = None,
        **kwargs: Any,
    ) -> CostarNet:
        """Load the three CSV files and open a session on them."""
        dataset = load_dataset(
            stars_path,
            works_path,
            cast_path,
            max_cast_size=_config.max_cast_size if max_cast_size is None else max_cast_size,
        )
        return cls(dataset, **kwargs)

    @property
    def dataset(self) -> Dataset:
        return self._dataset

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def workers(self) -> int:
        return self._runner.workers

    @property
    def networks(self) -> Networks:
        """Access the networks resource."""
        if self._networks is None:
            self._networks = Networks(self._context)
        return self._networks

    @property
    def index(self) -> Index:
        """Access the cross-region index resource."""
        if self._index is None:
            self._index = Index(self._context)
        return self._index

    @property
    def models(self) -> Models:
        """Access the models resource."""
        if self._models is None:
            self._models = Models(self._context)
        return self._models

    @property
    def subgroups(self) -> Subgroups:
        """Access the subgroups resource."""
        if self._subgroups is None:
            self._subgroups = Subgroups(self._context)
        return self._subgroups

    def close(self) -> None:
        """Shut down the worker pool, if any."""
        self._runner.close()

    def __enter__(self) -> CostarNet:
        """Enter context manager."""
        return self

    def __exit__(self, *args: Any) -> None:
        """Exit context manager and release workers."""
        self.close()
