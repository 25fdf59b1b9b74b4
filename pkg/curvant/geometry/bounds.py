# curvant/geometry/bounds.py
"""
Bounds bookkeeping for the design variables.

Clamping saturates every variable into its range and reports, for each
variable, whether it sits on its minimum or maximum. The flags feed the
agent's state vector.
"""

from typing import Tuple

import numpy as np

from curvant.schemas.design import DesignBounds, DesignVariables

# Relative tolerance (fraction of a variable's span) for "at the bound".
BOUND_TOLERANCE = 1e-9


def clamp_and_flag(
    design: DesignVariables, bounds: DesignBounds
) -> Tuple[DesignVariables, np.ndarray]:
    """
    Saturate a design into its bounds and compute the boundary flags.

    Args:
        design: Design variables, possibly out of range.
        bounds: Allowed ranges.

    Returns:
        The clamped design and a boolean vector of 10 flags ordered
        (at-min, at-max) for D1, theta1, L3_0, L3_1, L3_2.

    Example:
        A D1 request of 6 cm with a 5 cm maximum comes back as 5 cm with the
        D1 at-max flag (index 1) set.
    """
    values = design.as_array()
    minima = bounds.minima()
    maxima = bounds.maxima()
    clamped = np.clip(values, minima, maxima)

    tolerance = BOUND_TOLERANCE * (maxima - minima)
    at_min = clamped <= minima + tolerance
    at_max = clamped >= maxima - tolerance
    # Snap onto the bound exactly so repeated clamping is a fixed point.
    clamped = np.where(at_min, minima, np.where(at_max, maxima, clamped))

    flags = np.empty(2 * len(values), dtype=bool)
    flags[0::2] = at_min
    flags[1::2] = at_max
    return DesignVariables.from_array(clamped), flags


def in_bounds(design: DesignVariables, bounds: DesignBounds) -> bool:
    """True when every variable lies within its range."""
    return not bounds.describe_violation(design)
