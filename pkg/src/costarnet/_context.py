"""Shared state handed to every resource."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, TypeVar

from tqdm import tqdm

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from ._executor import TaskRunner
    from .ingest import Dataset

T = TypeVar("T")


@dataclass
class AnalysisContext:
    """Dataset, task runner and run seed shared by the resources of a client."""

    dataset: Dataset
    runner: TaskRunner
    seed: int
    progress: bool = False

    def track(self, items: Iterable[T], *, desc: str, total: int | None = None) -> Iterator[T]:
        """Wrap ``items`` in a stderr progress bar when progress is enabled."""
        return iter(tqdm(items, desc=desc, total=total, disable=not self.progress, leave=False))
