# tests/unit/test_environment.py
"""
Unit tests for environment resets, steps, failure handling and the factory.
"""

import numpy as np
import pytest

from curvant.exceptions import SolverError, ValidationError
from curvant.rl.environment import (
    Environment,
    EnvironmentFactory,
    LatticeTargetEnvironment,
    StepResult,
    env_reset,
)
from curvant.rl.state import ActionId, encode_state
from curvant.schemas.design import DesignVariables
from curvant.schemas.run import RunConfig


class FailingEnvironment(Environment):
    """Raises the configured error on every evaluation."""

    def __init__(self, bounds, error):
        super().__init__(bounds)
        self.error = error

    @classmethod
    def from_config(cls, config):
        return cls(config.bounds, SolverError("singular"))

    def score(self, design):
        raise self.error


# ============================================================================
# Reset
# ============================================================================

def test_reset_draws_lattice_points(bounds, rng):
    lattices = [variable.lattice() for variable in bounds.variables()]
    for _ in range(50):
        design, state = env_reset(bounds, rng)
        for value, lattice in zip(design.as_array(), lattices):
            assert np.any(np.isclose(value, lattice, rtol=0, atol=1e-12))
        np.testing.assert_array_equal(state, encode_state(design, bounds))


def test_reset_is_uniform(bounds):
    rng = np.random.default_rng(99)
    draws = 4000
    d1 = np.array([env_reset(bounds, rng)[0].d1 for _ in range(draws)])
    lattice = bounds.d1.lattice()
    sigma = lattice.std() / np.sqrt(draws)
    assert abs(d1.mean() - lattice.mean()) < 4 * sigma
    counts = np.array([np.sum(np.isclose(d1, value)) for value in lattice])
    assert counts.sum() == draws
    assert counts.min() > 0


def test_reset_is_seeded(bounds):
    first = env_reset(bounds, np.random.default_rng(5))[0]
    second = env_reset(bounds, np.random.default_rng(5))[0]
    assert first == second


# ============================================================================
# Steps
# ============================================================================

@pytest.mark.parametrize(
    "error",
    [SolverError("singular", condition=0.0), ValidationError("radiates no power")],
    ids=["solver_error", "validation_error"],
)
def test_failed_evaluation_reverts_and_penalises(bounds, error, caplog):
    env = FailingEnvironment(bounds, error)
    design = DesignVariables(d1=0.03, theta1=40.0, l3=(0.05, 0.05, 0.05))
    result = env.step(design, ActionId.D1_UP)
    assert isinstance(result, StepResult)
    assert result.failed
    assert result.design == design
    assert result.reward == -1.0
    assert not result.done
    assert env.simulations == 1
    assert "failed" in caplog.text


def test_unexpected_errors_propagate(bounds):
    env = FailingEnvironment(bounds, RuntimeError("bug"))
    design = DesignVariables(d1=0.03, theta1=40.0, l3=(0.05, 0.05, 0.05))
    with pytest.raises(RuntimeError):
        env.step(design, ActionId.NOOP)


def test_lattice_target_is_reached_and_counted(lattice_config):
    env = LatticeTargetEnvironment.from_config(lattice_config)
    result = env.step(env.target, ActionId.NOOP)
    assert result.done
    assert result.reward == 100.0
    assert result.report is None
    assert env.simulations == 1

    away = env.step(env.target, ActionId.D1_UP if env.target.d1 < 0.02 else ActionId.D1_DOWN)
    assert not away.done
    assert away.reward == -1.0
    assert env.simulations == 2


def test_lattice_target_depends_only_on_seed(lattice_config):
    first = LatticeTargetEnvironment.from_config(lattice_config).target
    second = LatticeTargetEnvironment.from_config(lattice_config).target
    other = LatticeTargetEnvironment.from_config(lattice_config.model_copy(update={"seed": 4}))
    assert first == second
    assert isinstance(other.target, DesignVariables)


# ============================================================================
# Factory
# ============================================================================

def test_factory_builds_named_environment(lattice_config):
    env = EnvironmentFactory.create_environment(lattice_config)
    assert isinstance(env, LatticeTargetEnvironment)
    assert str(env) == "LatticeTargetEnvironment"


def test_factory_rejects_unknown_name():
    config = RunConfig.model_construct(environment="anechoic")
    with pytest.raises(ValueError, match="Unknown environment"):
        EnvironmentFactory.create_environment(config)


def test_factory_registration(monkeypatch, lattice_config):
    monkeypatch.setitem(EnvironmentFactory._environments, "lattice", FailingEnvironment)
    env = EnvironmentFactory.create_environment(lattice_config)
    assert isinstance(env, FailingEnvironment)

    with pytest.raises(TypeError):
        EnvironmentFactory.register_environment("broken", dict)


def test_register_environment_lowercases_name(monkeypatch):
    monkeypatch.setattr(EnvironmentFactory, "_environments", dict(EnvironmentFactory._environments))
    EnvironmentFactory.register_environment("Failing", FailingEnvironment)
    assert EnvironmentFactory._environments["failing"] is FailingEnvironment
