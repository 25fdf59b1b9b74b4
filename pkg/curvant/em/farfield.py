# curvant/em/farfield.py
"""
Far-field radiation of solved wire currents.

Each half-segment carries a constant current, so its radiation vector has
the closed form I t h exp(jk r.m) sinc(k r.t h / 2) with m the piece
midpoint and h its length. The radiation intensity is

    U = k^2 eta |F_perp|^2 / (32 pi^2)

and gains are normalised by the power found by integrating U over the grid.
"""

import logging
from typing import Optional

import numpy as np
from scipy import constants

from curvant.em.basis import Basis, build_basis
from curvant.em.kernel import wavenumber
from curvant.em.types import FarFieldPattern
from curvant.exceptions import ValidationError
from curvant.geometry.wires import WireModel
from curvant.schemas.report import AngularGrid

logger = logging.getLogger(__name__)

MAX_GRID_STEP_DEG = 10.0
DIRECTION_CHUNK = 256
# Floor for null directions, relative to isotropic intensity.
GAIN_FLOOR_DBI = -200.0


def unit_directions(elevations: np.ndarray, azimuths: np.ndarray) -> np.ndarray:
    """(E*A, 3) unit vectors, elevation-major, for angles in degrees."""
    el, az = np.meshgrid(np.radians(elevations), np.radians(azimuths), indexing="ij")
    return np.stack(
        [np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)], axis=-1
    ).reshape(-1, 3)


def radiation_intensity(
    basis: Basis, half_currents: np.ndarray, k: float, directions: np.ndarray
) -> np.ndarray:
    """Radiation intensity U in W/sr towards each unit direction."""
    eta = np.sqrt(constants.mu_0 / constants.epsilon_0)
    moments = (half_currents * basis.half_lengths)[:, None] * basis.half_dirs
    intensity = np.empty(directions.shape[0])
    for lo in range(0, directions.shape[0], DIRECTION_CHUNK):
        rhat = directions[lo:lo + DIRECTION_CHUNK]
        phase = np.exp(1j * k * (rhat @ basis.half_mids.T))
        taper = np.sinc(k * (rhat @ basis.half_dirs.T) * basis.half_lengths / (2.0 * np.pi))
        field = (phase * taper) @ moments
        radial = np.einsum("dk,dk->d", field, rhat)
        intensity[lo:lo + DIRECTION_CHUNK] = (
            np.sum(np.abs(field) ** 2, axis=1) - np.abs(radial) ** 2
        )
    return k**2 * eta * np.maximum(intensity, 0.0) / (32.0 * np.pi**2)


def far_field(
    model: WireModel,
    currents: np.ndarray,
    frequency: float,
    grid: Optional[AngularGrid] = None,
    basis: Optional[Basis] = None,
) -> FarFieldPattern:
    """
    Sample the gain pattern on a cell-centred angular grid.

    Args:
        model: Wire model the currents were solved on.
        currents: Basis-function currents from ``solve_currents``.
        frequency: Frequency in Hz.
        grid: Sampling grid (default 5 degree cells).
        basis: Pre-built basis of ``model``.

    Raises:
        ValidationError: If the grid step is coarser than 10 degrees or no
            power is radiated.
    """
    grid = grid or AngularGrid()
    if grid.step_deg > MAX_GRID_STEP_DEG:
        raise ValidationError(
            f"Pattern grid step {grid.step_deg} deg is coarser than {MAX_GRID_STEP_DEG} deg"
        )
    basis = basis if basis is not None else build_basis(model)
    k = wavenumber(frequency)

    elevations = grid.elevations()
    azimuths = grid.azimuths()
    intensity = radiation_intensity(
        basis, basis.half_currents(currents), k, unit_directions(elevations, azimuths)
    ).reshape(len(elevations), len(azimuths))

    step = np.radians(grid.step_deg)
    weights = np.cos(np.radians(elevations))[:, None] * step * step
    radiated = float(np.sum(intensity * weights))
    if not radiated > 0.0:
        raise ValidationError("Currents radiate no power")

    floor = radiated / (4.0 * np.pi) * 10.0 ** (GAIN_FLOOR_DBI / 10.0)
    gain = 10.0 * np.log10(4.0 * np.pi * np.maximum(intensity, floor) / radiated)
    logger.debug(f"Far field on {gain.size} directions, P_rad={radiated:.4e} W")
    return FarFieldPattern(
        elevations=elevations,
        azimuths=azimuths,
        gain_dbi=gain,
        radiated_power=radiated,
    )
