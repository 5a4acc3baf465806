"""Pytest configuration and fixtures."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from costarnet.graph import CollabNetwork, make_attributes
from costarnet.ingest import Dataset
from costarnet.periods import make_period
from costarnet.synthetic import generate_dataset, write_dataset
from costarnet.types.records import CastRecord, StarRecord, WorkRecord

# Seed of the bundled synthetic fixture
FIXTURE_SEED = 7


@pytest.fixture
def triangle() -> CollabNetwork:
    """Provide a three-node complete graph."""
    return CollabNetwork.from_edges([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def two_region_network() -> CollabNetwork:
    """Eight stars alternating Mainland/HongKong with a mixed edge set.

    Every term column of the usual test models takes both values on edges
    and on non-edges, so fits neither separate nor diverge.
    """
    regions = ["Mainland", "HongKong"] * 4
    edges = [(0, 1), (0, 2), (1, 3), (2, 5), (3, 4), (4, 6), (5, 7), (6, 7), (1, 6), (0, 4)]
    attributes = [
        make_attributes(r, prev_cooperation_count=c)
        for r, c in zip(regions, [0, 3, 1, 2, 5, 0, 1, 4])
    ]
    return CollabNetwork.from_edges(
        edges, attributes=attributes, period=make_period(1990, 1993)
    )


@pytest.fixture
def tiny_records() -> tuple[list[StarRecord], list[WorkRecord], list[CastRecord]]:
    """Five stars, three works over two years."""
    stars: list[StarRecord] = [
        {"star_id": "a", "name": "A", "region": "Mainland", "birth_year": 1960, "first_work_year": 1985},
        {"star_id": "b", "name": "B", "region": "HongKong", "birth_year": 1970, "first_work_year": 1991},
        {"star_id": "c", "name": "C", "region": "Mainland", "birth_year": None, "first_work_year": None},
        {"star_id": "d", "name": "D", "region": "Taiwan", "birth_year": 1975, "first_work_year": 1990},
        {"star_id": "e", "name": "E", "region": "HongKong", "birth_year": 1950, "first_work_year": 1970},
    ]
    works: list[WorkRecord] = [
        {"work_id": "w1", "title": "One", "year": 1990, "kind": "movie"},
        {"work_id": "w2", "title": "Two", "year": 1991, "kind": "tv"},
        {"work_id": "w3", "title": "Three", "year": 1991, "kind": "movie"},
    ]
    cast: list[CastRecord] = [
        {"work_id": "w1", "star_id": "a"},
        {"work_id": "w1", "star_id": "c"},
        {"work_id": "w1", "star_id": "d"},
        {"work_id": "w2", "star_id": "a"},
        {"work_id": "w2", "star_id": "b"},
        {"work_id": "w2", "star_id": "c"},
        {"work_id": "w3", "star_id": "a"},
        {"work_id": "w3", "star_id": "b"},
        {"work_id": "w3", "star_id": "e"},
    ]
    return stars, works, cast


@pytest.fixture
def tiny_dataset(
    tiny_records: tuple[list[StarRecord], list[WorkRecord], list[CastRecord]],
) -> Dataset:
    """Provide the validated tiny dataset."""
    return Dataset.from_records(*tiny_records)


@pytest.fixture(scope="session")
def synthetic_dataset() -> Dataset:
    """Provide a seeded 200-star synthetic dataset."""
    return generate_dataset(200, 1980, 2000, seed=FIXTURE_SEED)


@pytest.fixture(scope="session")
def synthetic_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """Synthetic dataset written as stars/works/cast CSVs."""
    directory = tmp_path_factory.mktemp("synthetic")
    write_dataset(generate_dataset(200, 1980, 2000, seed=FIXTURE_SEED), directory)
    return directory


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """The 500-star synthetic fixture written by ``costarnet synth``."""
    directory = tmp_path_factory.mktemp("fixture500")
    write_dataset(generate_dataset(500, 1980, 2014, seed=FIXTURE_SEED), directory)
    return directory


def random_network(
    rng: np.random.Generator,
    n: int,
    p: float,
    regions: tuple[str, ...] = ("Mainland", "HongKong"),
) -> CollabNetwork:
    """Erdos-Renyi network with independently drawn regions and lagged counts."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    attributes = [
        make_attributes(
            regions[int(rng.integers(len(regions)))],  # type: ignore[arg-type]
            prev_cooperation_count=int(rng.integers(0, 5)),
            age_group=("under20", "20-39", "40-59")[int(rng.integers(3))],
        )
        for _ in range(n)
    ]
    return CollabNetwork.from_edges(edges, attributes=attributes)


def pytest_configure(config: pytest.Config) -> None:
    """Configure pytest markers."""
    config.addinivalue_line(
        "markers",
        "slow: full-scale acceptance run, select with -m slow",
    )
