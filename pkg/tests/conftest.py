"""Shared test utilities: deterministic random fixtures and a CI profile."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from topolysemy import EmbeddingSet

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def random_cloud(rng: np.random.Generator, m: int, d: int, scale: float = 2.0) -> np.ndarray:
    return scale * rng.standard_normal((m, d))


def random_unit_rows(rng: np.random.Generator, m: int, d: int) -> np.ndarray:
    points = rng.standard_normal((m, d))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def random_diagram_bars(rng: np.random.Generator, max_bars: int) -> np.ndarray:
    m = int(rng.integers(0, max_bars + 1))
    births = rng.uniform(0.0, 2.0, size=m)
    deaths = births + rng.uniform(0.0, 2.0, size=m)
    return np.column_stack([births, deaths]) if m else np.empty((0, 2))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260819)


@pytest.fixture
def small_embedding(rng) -> EmbeddingSet:
    vectors = rng.standard_normal((30, 6))
    words = tuple(f"w{i}" for i in range(30))
    return EmbeddingSet(words=words, vectors=vectors)
