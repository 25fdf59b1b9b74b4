# curvant/em/metrics.py
"""
Scalar antenna metrics used by the success condition: VSWR against a
reference line, the magnitude of the impedance angle, and the gain
difference between the two horizontal normal directions of the array.
"""

import math
from typing import Union

from curvant.em.types import FarFieldPattern
from curvant.exceptions import ValidationError
from curvant.schemas.report import ComplexImpedance

Impedance = Union[ComplexImpedance, complex]


def _as_complex(z: Impedance) -> complex:
    return z.value if isinstance(z, ComplexImpedance) else complex(z)


def vswr(z: Impedance, z0: float = 50.0) -> float:
    """
    Voltage standing wave ratio of ``z`` on a line of impedance ``z0``.

    Returns ``math.inf`` for a total reflection (|Gamma| = 1).

    Example:
        100 ohm and 25 ohm loads on a 50 ohm line both give a VSWR of 2.
    """
    if z0 <= 0:
        raise ValidationError(f"Reference impedance must be positive, got {z0}")
    z = _as_complex(z)
    if z == -z0:
        return math.inf
    gamma = abs((z - z0) / (z + z0))
    if gamma >= 1.0:
        return math.inf
    return (1.0 + gamma) / (1.0 - gamma)


def impedance_angle(z: Impedance) -> float:
    """|arg z| in degrees, within [0, 180]."""
    z = _as_complex(z)
    return abs(math.degrees(math.atan2(z.imag, z.real)))


def gain_difference(pattern: FarFieldPattern, outward_azimuth: float = 0.0) -> float:
    """
    Gain at the outward normal minus the gain at the opposite direction,
    both on the horizon (elevation 0), in dB.
    """
    forward = pattern.gain_at(0.0, outward_azimuth)
    backward = pattern.gain_at(0.0, outward_azimuth + 180.0)
    return forward - backward
