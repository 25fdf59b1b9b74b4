# tests/conftest.py

import hypothesis
import numpy as np
import pytest

from curvant.schemas.design import DesignBounds, DesignVariables, TubeSpec, VariableBounds
from curvant.schemas.run import RLConfig, RunConfig, SolverConfig

hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("ci")

FREQUENCY = 2.45e9


@pytest.fixture
def bounds() -> DesignBounds:
    """Default design bounds."""
    return DesignBounds()


@pytest.fixture
def tube() -> TubeSpec:
    return TubeSpec(r1=0.10, l1=0.25)


@pytest.fixture
def preset_100mm() -> DesignVariables:
    return DesignVariables(d1=0.05, theta1=25.4, l3=(0.06, 0.055, 0.06))


@pytest.fixture
def coarse_solver() -> SolverConfig:
    """Coarsened tube mesh and 10 degree pattern grid for quick evaluations."""
    return SolverConfig(mesh_pitch_fraction=0.25, pattern_step_deg=10.0)


def coarse_lattice_bounds() -> DesignBounds:
    """Three lattice values per variable (243 states) with the asymmetric theta1 step."""
    length = VariableBounds(minimum=0.01, maximum=0.02, step_up=0.005)
    return DesignBounds(
        d1=VariableBounds(minimum=0.01, maximum=0.03, step_up=0.01),
        theta1=VariableBounds(minimum=10.0, maximum=12.0, step_up=1.0, step_down=0.286),
        l3=(length, length, length),
    )


@pytest.fixture
def lattice_bounds() -> DesignBounds:
    return coarse_lattice_bounds()


@pytest.fixture
def lattice_config() -> RunConfig:
    """Solver-free run on the coarse lattice."""
    return RunConfig(
        environment="lattice",
        bounds=coarse_lattice_bounds(),
        budget=400,
        seed=3,
        rl=RLConfig(alpha=1.0, adam_lr=1e-3, gamma=0.9, target_sync=50, episode_cap=50),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
