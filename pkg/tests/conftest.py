"""pytest configuration and fixtures."""

import numpy as np
import pytest

from core.config import get_settings
from games.builtin import LQCost, QuadCost
from games.instance import GameInstance
from games.potentials import GaussianPotential
from measures.grid import GridMeasure1D
from schemas.config import GridSpec, SdeConfig


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Fresh settings per test with run directories under tmp_path."""
    monkeypatch.setenv("MFL_OUTPUT_ROOT", str(tmp_path / "runs"))
    monkeypatch.setenv("MFL_WORKERS", "2")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def small_grid() -> GridSpec:
    """Coarse grid for fast fixed-point solves."""
    return GridSpec(lo=-6.0, hi=6.0, nodes=1201)


@pytest.fixture
def lq_instance() -> GameInstance:
    return GameInstance(cost=LQCost(a=1.0, b=0.5), potential=GaussianPotential(), sigma=0.25)


@pytest.fixture
def quad_instance() -> GameInstance:
    return GameInstance(cost=QuadCost(k=1.0), potential=GaussianPotential(), sigma=0.2)


@pytest.fixture
def short_sde() -> SdeConfig:
    return SdeConfig(dt=0.01, t_end=1.0, seed=7, record_every=10, replicas=4)


@pytest.fixture
def standard_normal_grid() -> GridMeasure1D:
    return GridMeasure1D.gaussian(-8.0, 8.0, 1601)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
