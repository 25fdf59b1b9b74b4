# curvant/schemas/report.py
"""
Report Schemas

Serializable summaries of electromagnetic evaluations. The full report with
the far-field pattern lives in ``curvant.em.types``; these models hold the
scalar parts that are written to JSON and CSV files.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class ComplexImpedance(BaseModel):
    """
    Complex input impedance in ohms.

    The real part of a passive port solution is non-negative; small negative
    values within numerical tolerance are accepted.
    """
    real: float = Field(..., description="Resistance in ohms")
    imag: float = Field(..., description="Reactance in ohms")

    model_config = ConfigDict(frozen=True)

    @field_validator("real", "imag")
    @classmethod
    def check_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("Impedance components must be finite")
        return v

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexImpedance":
        return cls(real=float(z.real), imag=float(z.imag))

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


class EMReportSummary(BaseModel):
    """Scalar metrics of one design evaluation."""
    frequency_hz: float
    z_in: ComplexImpedance
    vswr: float = Field(..., ge=1.0)
    phi_deg: float = Field(..., ge=0.0, le=180.0)
    g_diff_db: float
    peak_gain_dbi: float
    reference_impedance: float = 50.0

    model_config = ConfigDict(
        frozen=True,
        ser_json_inf_nan="constants",
        json_schema_extra={
            "example": {
                "frequency_hz": 2.45e9,
                "z_in": {"real": 48.2, "imag": 6.1},
                "vswr": 1.14,
                "phi_deg": 7.2,
                "g_diff_db": 11.3,
                "peak_gain_dbi": 7.9,
                "reference_impedance": 50.0,
            }
        },
    )


class SweepPoint(BaseModel):
    """Impedance and match of a fixed geometry at one frequency."""
    frequency_hz: float
    resistance: float
    reactance: float
    vswr: float
    phi_deg: float


class AngularGrid(BaseModel):
    """
    Far-field sampling grid.

    Samples sit at cell centres: elevations run from -90 + step/2 to
    90 - step/2 and azimuths from 0 to 360 - step, so neither pole appears.
    Elevation 0 is the plane perpendicular to the tube axis.
    """
    step_deg: float = Field(5.0, gt=0)

    model_config = ConfigDict(frozen=True)

    @field_validator("step_deg")
    @classmethod
    def check_divides(cls, v: float) -> float:
        if abs(180.0 / v - round(180.0 / v)) > 1e-9:
            raise ValueError("step_deg must divide 180 evenly")
        return v

    @property
    def n_elevation(self) -> int:
        return int(round(180.0 / self.step_deg))

    @property
    def n_azimuth(self) -> int:
        return int(round(360.0 / self.step_deg))

    def elevations(self) -> np.ndarray:
        return -90.0 + self.step_deg * (np.arange(self.n_elevation) + 0.5)

    def azimuths(self) -> np.ndarray:
        return self.step_deg * np.arange(self.n_azimuth)
