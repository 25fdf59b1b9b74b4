# curvant/schemas/run.py
"""
Run Schemas

Configuration of training/transfer runs and the metrics they produce.
Defaults are the standard RL parameters (two hidden layers of 100
units, epsilon annealed from 0.5 to 0, Q-learning rate 0.5, ADAM rate 1e-4)
and the reduced desk-scale budgets.
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from curvant.schemas.design import DesignBounds, DesignVariables, TubeSpec
from curvant.schemas.report import EMReportSummary


class ThetaMode(str, Enum):
    """
    How theta1 places the three dipole planes.

    ADJACENT puts dipoles at -theta1, 0, +theta1; FULL_ARC spreads the three
    planes over an arc of theta1 (-theta1/2, 0, +theta1/2).
    """
    ADJACENT = "adjacent"
    FULL_ARC = "full_arc"


class SolverConfig(BaseModel):
    """Electromagnetic model settings."""
    frequency: float = Field(2.45e9, gt=0, description="Design frequency in Hz")
    reference_impedance: float = Field(50.0, gt=0, description="VSWR reference in ohms")
    element_radius: float = Field(5e-4, gt=0, description="Dipole wire radius in meters")
    mesh_pitch_fraction: float = Field(
        0.1, gt=0, le=0.5, description="Tube mesh pitch as a fraction of the wavelength"
    )
    pattern_step_deg: float = Field(5.0, gt=0, le=10.0)
    theta_mode: ThetaMode = ThetaMode.ADJACENT

    model_config = ConfigDict(frozen=True)


class RLConfig(BaseModel):
    """Deep Q-learning hyperparameters."""
    hidden_sizes: Tuple[int, ...] = (100, 100)
    epsilon_start: float = Field(0.5, ge=0.0, le=1.0)
    epsilon_end: float = Field(0.0, ge=0.0, le=1.0)
    alpha: float = Field(0.5, ge=0.0, le=1.0, description="TD-target blending rate")
    adam_lr: float = Field(1e-4, gt=0)
    gamma: float = Field(0.99, ge=0.0, lt=1.0)
    success_reward: float = Field(100.0, gt=0)
    replay_capacity: int = Field(10_000, gt=0)
    batch_size: int = Field(32, gt=0)
    target_sync: int = Field(250, gt=0, description="Environment steps between target copies")
    episode_cap: int = Field(200, gt=0)
    store_replay: bool = False

    model_config = ConfigDict(frozen=True)

    @field_validator("hidden_sizes")
    @classmethod
    def check_hidden(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v or any(size <= 0 for size in v):
            raise ValueError("hidden_sizes must list positive layer widths")
        return v


class RunConfig(BaseModel):
    """
    Everything needed to reproduce one run.

    ``environment`` selects the environment built by the factory:
    ``antenna`` runs the full electromagnetic pipeline, ``lattice`` is the
    solver-free surrogate.
    """
    tube: TubeSpec = Field(default_factory=TubeSpec)
    bounds: DesignBounds = Field(default_factory=DesignBounds)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    rl: RLConfig = Field(default_factory=RLConfig)
    budget: int = Field(2_000, ge=0, description="Total simulator calls")
    seed: int = Field(0, ge=0)
    environment: str = "antenna"
    checkpoint_path: Optional[Path] = None
    design: Optional[DesignVariables] = None

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def check_environment(self) -> "RunConfig":
        if self.environment not in {"antenna", "lattice"}:
            raise ValueError("environment must be 'antenna' or 'lattice'")
        return self


class SuccessRecord(BaseModel):
    """One design that met the success condition."""
    simulation_index: int = Field(..., ge=1)
    attempts: int = Field(..., ge=1)
    design: DesignVariables
    report: Optional[EMReportSummary] = None

    model_config = ConfigDict(frozen=True)


class RunMetrics(BaseModel):
    """Successes of a run in the order they were found."""
    successes: List[SuccessRecord] = Field(default_factory=list)
    total_simulations: int = 0
    episode_lengths: List[int] = Field(default_factory=list)
    wall_clock_s: float = 0.0

    @model_validator(mode="after")
    def check_monotonic(self) -> "RunMetrics":
        indices = [s.simulation_index for s in self.successes]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("success simulation indices must be strictly increasing")
        return self

    def best(self) -> Optional[SuccessRecord]:
        """Success with the lowest VSWR, ties broken by the lowest phi."""
        ranked = [s for s in self.successes if s.report is not None]
        if not ranked:
            return None
        return min(ranked, key=lambda s: (s.report.vswr, s.report.phi_deg))
