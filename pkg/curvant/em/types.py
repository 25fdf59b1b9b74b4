# curvant/em/types.py
"""
Solver result types that carry numpy arrays and so stay out of the pydantic
schemas.
"""

from dataclasses import dataclass

import numpy as np

from curvant.schemas.report import ComplexImpedance, EMReportSummary


@dataclass(frozen=True, eq=False)
class FarFieldPattern:
    """
    Gain over the sampling sphere.

    Attributes:
        elevations: (E,) cell-centre elevations in degrees, ascending.
        azimuths: (A,) azimuths in degrees, starting at 0, uniform step.
        gain_dbi: (E, A) gain in dBi.
        radiated_power: Total radiated power in watts from grid quadrature.
    """
    elevations: np.ndarray
    azimuths: np.ndarray
    gain_dbi: np.ndarray
    radiated_power: float

    @property
    def peak_gain(self) -> float:
        return float(np.max(self.gain_dbi))

    def gain_at(self, elevation: float, azimuth: float) -> float:
        """
        Bilinear interpolation of the gain in dBi.

        Azimuth wraps around 360 degrees. Elevations beyond the outermost
        samples use the nearest row.
        """
        el = self.elevations
        row = np.searchsorted(el, elevation) - 1
        row = int(np.clip(row, 0, len(el) - 2))
        t = float(np.clip((elevation - el[row]) / (el[row + 1] - el[row]), 0.0, 1.0))

        step = self.azimuths[1] - self.azimuths[0]
        position = ((azimuth - self.azimuths[0]) % 360.0) / step
        col = int(np.floor(position)) % len(self.azimuths)
        nxt = (col + 1) % len(self.azimuths)
        u = position - np.floor(position)

        g = self.gain_dbi
        lower = (1.0 - u) * g[row, col] + u * g[row, nxt]
        upper = (1.0 - u) * g[row + 1, col] + u * g[row + 1, nxt]
        return float((1.0 - t) * lower + t * upper)


@dataclass(frozen=True, eq=False)
class EMReport:
    """Everything one design evaluation produces."""
    frequency: float
    z_in: ComplexImpedance
    vswr: float
    phi: float
    g_diff: float
    pattern: FarFieldPattern
    input_power: float
    reference_impedance: float = 50.0

    def summary(self) -> EMReportSummary:
        return EMReportSummary(
            frequency_hz=self.frequency,
            z_in=self.z_in,
            vswr=self.vswr,
            phi_deg=self.phi,
            g_diff_db=self.g_diff,
            peak_gain_dbi=self.pattern.peak_gain,
            reference_impedance=self.reference_impedance,
        )
