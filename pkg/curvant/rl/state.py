# curvant/rl/state.py
"""
State encoding, action mechanics and the success reward of the design
environment.
"""

from enum import IntEnum
from typing import Tuple

import numpy as np

from curvant.geometry.bounds import clamp_and_flag
from curvant.schemas.design import DesignBounds, DesignVariables

STATE_SIZE = 15
VSWR_LIMIT = 2.0
GAIN_DIFF_LIMIT_DB = 10.0
PHI_LIMIT_DEG = 15.0
FAILURE_REWARD = -1.0
# Values are rounded after each step so repeated steps stay on the lattice.
STEP_DECIMALS = 12


class ActionId(IntEnum):
    """The eleven discrete moves: one step up or down per variable, or nothing."""
    D1_UP = 0
    D1_DOWN = 1
    THETA1_UP = 2
    THETA1_DOWN = 3
    L3_0_UP = 4
    L3_0_DOWN = 5
    L3_1_UP = 6
    L3_1_DOWN = 7
    L3_2_UP = 8
    L3_2_DOWN = 9
    NOOP = 10


ACTION_COUNT = len(ActionId)


def encode_state(design: DesignVariables, bounds: DesignBounds) -> np.ndarray:
    """
    Build the 15-element observation for a design.

    The first five entries are the variables scaled to [0, 1] by their
    bounds; the last ten are the (at-min, at-max) flags from
    ``clamp_and_flag`` as 0.0/1.0.

    Example:
        theta1 = 50 with bounds [10, 90] encodes as 0.5.
    """
    clamped, flags = clamp_and_flag(design, bounds)
    minima = bounds.minima()
    normalized = (clamped.as_array() - minima) / (bounds.maxima() - minima)
    return np.concatenate([normalized, flags.astype(float)])


def apply_action(
    design: DesignVariables, action: ActionId, bounds: DesignBounds
) -> DesignVariables:
    """
    Move one variable by its fixed step and saturate into bounds.

    Even action ids increase a variable by its ``step_up``, odd ids decrease
    it by its ``step_down``; ``NOOP`` returns ``design`` unchanged.
    """
    action = ActionId(action)
    if action == ActionId.NOOP:
        return design
    index, down = divmod(int(action), 2)
    variable = bounds.variables()[index]
    values = design.as_array()
    values[index] += -variable.step_down if down else variable.step_up
    moved, _ = clamp_and_flag(
        DesignVariables.from_array(np.round(values, STEP_DECIMALS)), bounds
    )
    return moved


def is_success(vswr: float, g_diff: float, phi: float) -> bool:
    return vswr < VSWR_LIMIT and g_diff > GAIN_DIFF_LIMIT_DB and phi < PHI_LIMIT_DEG


def reward(report, success_reward: float = 100.0) -> Tuple[float, bool]:
    """
    Reward of an evaluated design.

    Args:
        report: Anything with ``vswr``, ``g_diff`` and ``phi`` attributes,
            normally an ``EMReport``.
        success_reward: Reward granted when the success condition holds.

    Returns:
        ``(success_reward, True)`` when VSWR < 2, G > 10 dB and phi < 15
        degrees (all strict), otherwise ``(-1.0, False)``.
    """
    if is_success(report.vswr, report.g_diff, report.phi):
        return float(success_reward), True
    return FAILURE_REWARD, False
