# curvant/schemas/design.py
"""
Design Schemas

Pydantic value types describing the antenna that the agent adjusts: the tube
it is mounted on, the five design variables and the bounds/steps that limit
them. All lengths are meters and all angles are degrees.

The fixed variable order used everywhere (state vectors, boundary flags,
actions) is: D1, theta1, L3_0, L3_1, L3_2.
"""

from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

VARIABLE_NAMES: Tuple[str, ...] = ("d1", "theta1", "l3_0", "l3_1", "l3_2")


class TubeSpec(BaseModel):
    """
    Conductive tube that carries the antenna.

    Attributes:
        r1: Tube radius (m).
        l1: Length of the modeled tube fragment (m).
    """
    r1: float = Field(0.10, gt=0, description="Tube radius in meters")
    l1: float = Field(0.25, gt=0, description="Modeled tube fragment length in meters")

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"r1": 0.10, "l1": 0.25}},
    )


class DesignVariables(BaseModel):
    """
    The mutable antenna dimensions.

    ``d1`` is the dipole-to-tube spacing, ``theta1`` the angular separation
    between dipole planes and ``l3`` the total length of each of the three
    dipoles.
    """
    d1: float = Field(..., description="Dipole-to-tube spacing in meters")
    theta1: float = Field(..., description="Angular separation in degrees")
    l3: Tuple[float, float, float] = Field(..., description="Dipole lengths in meters")

    model_config = ConfigDict(frozen=True)

    def as_array(self) -> np.ndarray:
        """Return the variables as a float vector in canonical order."""
        return np.array([self.d1, self.theta1, *self.l3], dtype=float)

    @classmethod
    def from_array(cls, values) -> "DesignVariables":
        values = [float(v) for v in values]
        return cls(d1=values[0], theta1=values[1], l3=(values[2], values[3], values[4]))


class VariableBounds(BaseModel):
    """
    Limits and step sizes of a single design variable.

    ``step_down`` defaults to ``step_up``; only theta1 uses a different
    decrement step.
    """
    minimum: float
    maximum: float
    step_up: float = Field(..., gt=0)
    step_down: float = Field(..., gt=0)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def default_step_down(cls, data):
        if isinstance(data, dict) and data.get("step_down") is None:
            data = {**data, "step_down": data.get("step_up")}
        return data

    @model_validator(mode="after")
    def validate_range(self) -> "VariableBounds":
        if not self.minimum < self.maximum:
            raise ValueError(
                f"minimum ({self.minimum}) must be smaller than maximum ({self.maximum})"
            )
        return self

    @property
    def span(self) -> float:
        return self.maximum - self.minimum

    def lattice(self) -> np.ndarray:
        """Values reachable from the minimum in whole increment steps."""
        count = int(np.floor(self.span / self.step_up + 1e-9)) + 1
        return self.minimum + self.step_up * np.arange(count)


def _length(minimum: float, maximum: float, step: float) -> VariableBounds:
    return VariableBounds(minimum=minimum, maximum=maximum, step_up=step)


class DesignBounds(BaseModel):
    """
    Allowed ranges and fixed steps for every design variable.

    Defaults: D1 in [1, 5] cm with 1 cm steps, each dipole in [1, 15] cm
    with 5 mm steps, and theta1 in [10, 90] degrees growing by 1 degree and
    shrinking by 0.286 degree.
    """
    d1: VariableBounds = Field(default_factory=lambda: _length(0.01, 0.05, 0.01))
    theta1: VariableBounds = Field(
        default_factory=lambda: VariableBounds(
            minimum=10.0, maximum=90.0, step_up=1.0, step_down=0.286
        )
    )
    l3: Tuple[VariableBounds, VariableBounds, VariableBounds] = Field(
        default_factory=lambda: tuple(_length(0.01, 0.15, 0.005) for _ in range(3))
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_steps(self) -> "DesignBounds":
        """Only theta1 may use a decrement step different from its increment."""
        for name, bounds in zip(VARIABLE_NAMES, self.variables()):
            if name != "theta1" and not np.isclose(bounds.step_down, bounds.step_up):
                raise ValueError(f"{name}: decrement step must equal increment step")
        return self

    def variables(self) -> List[VariableBounds]:
        """Bounds in canonical variable order."""
        return [self.d1, self.theta1, *self.l3]

    def minima(self) -> np.ndarray:
        return np.array([b.minimum for b in self.variables()])

    def maxima(self) -> np.ndarray:
        return np.array([b.maximum for b in self.variables()])

    def describe_violation(self, design: DesignVariables) -> str:
        """Return a message naming the first violated bound, or an empty string."""
        for name, value, bounds in zip(VARIABLE_NAMES, design.as_array(), self.variables()):
            if value < bounds.minimum - 1e-12:
                return f"{name}={value:g} is below its minimum {bounds.minimum:g}"
            if value > bounds.maximum + 1e-12:
                return f"{name}={value:g} is above its maximum {bounds.maximum:g}"
        return ""


# Known matched antennas for the two standard tube radii.
PRESET_DESIGNS = {
    "tube-100mm": (
        DesignVariables(d1=0.05, theta1=25.4, l3=(0.06, 0.055, 0.06)),
        TubeSpec(r1=0.10, l1=0.25),
    ),
    "tube-120mm": (
        DesignVariables(d1=0.05, theta1=24.99, l3=(0.06, 0.055, 0.05)),
        TubeSpec(r1=0.12, l1=0.25),
    ),
}


def preset_design(name: str) -> Tuple[DesignVariables, TubeSpec]:
    """
    Look up a named preset design.

    Raises:
        ValueError: If the preset name is unknown.
    """
    try:
        return PRESET_DESIGNS[name.lower()]
    except KeyError:
        raise ValueError(
            f"Unknown preset: {name}. Choose one of: {', '.join(sorted(PRESET_DESIGNS))}"
        ) from None
