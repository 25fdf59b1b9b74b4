# curvant/rl/environment.py
########################
# Design Environments  #
########################

"""
Episodic environments the agent acts in.

``AntennaEnvironment`` evaluates every step with the electromagnetic
pipeline. ``LatticeTargetEnvironment`` keeps the same state and action
mechanics but rewards reaching a hidden point of the step lattice, so the
learning loop can be exercised without the solver.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from curvant.em.pipeline import evaluate_design
from curvant.em.types import EMReport
from curvant.exceptions import SolverError, ValidationError
from curvant.rl.state import FAILURE_REWARD, ActionId, apply_action, encode_state, reward
from curvant.schemas.design import DesignBounds, DesignVariables, TubeSpec
from curvant.schemas.run import RunConfig, SolverConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StepResult:
    """
    Outcome of one environment step.

    ``failed`` marks a step whose evaluation raised; such steps keep the
    pre-action design and earn the failure reward.
    """
    design: DesignVariables
    state: np.ndarray
    reward: float
    done: bool
    report: Optional[EMReport] = None
    failed: bool = False


def env_reset(
    bounds: DesignBounds, rng: np.random.Generator
) -> Tuple[DesignVariables, np.ndarray]:
    """
    Draw a start design uniformly from the step lattice of every variable.

    theta1 is drawn from its increment lattice (minimum + k * step_up).
    """
    values = []
    for variable in bounds.variables():
        lattice = variable.lattice()
        values.append(lattice[rng.integers(len(lattice))])
    design = DesignVariables.from_array(values)
    return design, encode_state(design, bounds)


class Environment(ABC):
    """
    Abstract base class for design environments.

    Subclasses decide how a design is scored; the base class owns the
    action mechanics, failure handling and the simulation counter.
    """

    def __init__(self, bounds: DesignBounds, success_reward: float = 100.0):
        self.bounds = bounds
        self.success_reward = success_reward
        self.simulations = 0

    @classmethod
    @abstractmethod
    def from_config(cls, config: RunConfig) -> "Environment":
        """Build the environment from a run configuration."""
        pass  # pragma: no cover

    @abstractmethod
    def score(self, design: DesignVariables) -> Tuple[float, bool, Optional[EMReport]]:
        """
        Evaluate one design.

        Returns:
            Tuple of (reward, done, report); ``report`` may be None for
            environments without a solver.

        Raises:
            CurvantError: If the design cannot be evaluated.
        """
        pass  # pragma: no cover

    def reset(self, rng: np.random.Generator) -> Tuple[DesignVariables, np.ndarray]:
        return env_reset(self.bounds, rng)

    def step(self, design: DesignVariables, action: ActionId) -> StepResult:
        """
        Apply an action, evaluate the result and encode the next state.

        Every call counts as one simulation. Evaluation failures are
        absorbed: the step earns -1 and the design reverts to ``design``.
        """
        self.simulations += 1
        candidate = apply_action(design, action, self.bounds)
        try:
            value, done, report = self.score(candidate)
        except (SolverError, ValidationError) as exc:
            logger.warning(
                f"Simulation {self.simulations} failed for "
                f"{candidate.as_array().round(5).tolist()}: {exc}"
            )
            return StepResult(
                design=design,
                state=encode_state(design, self.bounds),
                reward=FAILURE_REWARD,
                done=False,
                failed=True,
            )
        return StepResult(
            design=candidate,
            state=encode_state(candidate, self.bounds),
            reward=value,
            done=done,
            report=report,
        )

    def __str__(self) -> str:
        return self.__class__.__name__


class AntennaEnvironment(Environment):
    """Scores designs with the full electromagnetic pipeline."""

    def __init__(
        self,
        bounds: DesignBounds,
        tube: TubeSpec,
        solver: Optional[SolverConfig] = None,
        success_reward: float = 100.0,
    ):
        super().__init__(bounds, success_reward)
        self.tube = tube
        self.solver = solver or SolverConfig()

    @classmethod
    def from_config(cls, config: RunConfig) -> "AntennaEnvironment":
        return cls(config.bounds, config.tube, config.solver, config.rl.success_reward)

    def score(self, design: DesignVariables) -> Tuple[float, bool, Optional[EMReport]]:
        report = evaluate_design(design, self.tube, self.solver.frequency, self.solver)
        value, done = reward(report, self.success_reward)
        return value, done, report


class LatticeTargetEnvironment(Environment):
    """
    Solver-free surrogate with the antenna environment's mechanics.

    A target is drawn from the step lattice; a design succeeds when every
    variable lies within half an increment step of it.
    """

    def __init__(
        self,
        bounds: DesignBounds,
        target: DesignVariables,
        success_reward: float = 100.0,
    ):
        super().__init__(bounds, success_reward)
        self.target = target
        self.tolerance = 0.5 * np.array([b.step_up for b in bounds.variables()])

    @classmethod
    def from_config(cls, config: RunConfig) -> "LatticeTargetEnvironment":
        # The target depends only on the seed, so warm and cold runs share it.
        target, _ = env_reset(config.bounds, np.random.default_rng([config.seed, 7919]))
        return cls(config.bounds, target, config.rl.success_reward)

    def score(self, design: DesignVariables) -> Tuple[float, bool, Optional[EMReport]]:
        distance = np.abs(design.as_array() - self.target.as_array())
        if np.all(distance <= self.tolerance + 1e-12):
            return float(self.success_reward), True, None
        return FAILURE_REWARD, False, None


def env_step(
    design: DesignVariables,
    action: ActionId,
    tube: TubeSpec,
    frequency: float,
    bounds: DesignBounds,
    solver: Optional[SolverConfig] = None,
    success_reward: float = 100.0,
) -> Tuple[np.ndarray, float, bool]:
    """Single antenna step without keeping an environment around."""
    solver = (solver or SolverConfig()).model_copy(update={"frequency": frequency})
    result = AntennaEnvironment(bounds, tube, solver, success_reward).step(design, action)
    return result.state, result.reward, result.done


class EnvironmentFactory:
    """
    Factory class for creating environments by name.

    Mirrors the run configuration's ``environment`` key.
    """

    _environments: Dict[str, type] = {
        "antenna": AntennaEnvironment,
        "lattice": LatticeTargetEnvironment,
    }

    @classmethod
    def register_environment(cls, name: str, environment_class: type) -> None:
        """
        Register a new environment type.

        Raises:
            TypeError: If the class does not inherit from Environment.
        """
        if not issubclass(environment_class, Environment):
            raise TypeError("Environment class must inherit from Environment")
        cls._environments[name.lower()] = environment_class

    @classmethod
    def create_environment(cls, config: RunConfig) -> Environment:
        """
        Build the environment named by ``config.environment``.

        Raises:
            ValueError: If the environment name is unknown.
        """
        environment_class = cls._environments.get(config.environment.lower())
        if not environment_class:
            raise ValueError(f"Unknown environment: {config.environment}")
        return environment_class.from_config(config)
