# curvant/em/pipeline.py
"""
Design evaluation pipeline: assemble -> fill -> solve -> metrics.
"""

import logging
import time
from typing import List, Optional, Sequence

import numpy as np

from curvant.em.basis import build_basis
from curvant.em.farfield import far_field
from curvant.em.kernel import fill_impedance_matrix
from curvant.em.metrics import gain_difference, impedance_angle, vswr
from curvant.em.solver import (
    excitation_vector,
    input_power,
    port_input_impedance,
    solve_currents,
)
from curvant.em.types import EMReport
from curvant.exceptions import SolverError, ValidationError
from curvant.geometry.wires import WireModel, assemble_model
from curvant.schemas.design import DesignBounds, DesignVariables, TubeSpec
from curvant.schemas.report import AngularGrid, SweepPoint
from curvant.schemas.run import SolverConfig

logger = logging.getLogger(__name__)

# Relative tolerance on a negative input resistance before it counts as a
# solver failure.
PASSIVITY_TOLERANCE = 1e-6


def _build(
    design: DesignVariables,
    tube: TubeSpec,
    frequency: float,
    config: SolverConfig,
    bounds: Optional[DesignBounds],
) -> WireModel:
    if bounds is not None:
        violation = bounds.describe_violation(design)
        if violation:
            raise ValidationError(f"Design out of bounds: {violation}")
    return assemble_model(
        design,
        tube,
        design_frequency=frequency,
        element_radius=config.element_radius,
        pitch_fraction=config.mesh_pitch_fraction,
        theta_mode=config.theta_mode,
    )


def evaluate_model(
    model: WireModel,
    frequency: float,
    config: Optional[SolverConfig] = None,
) -> EMReport:
    """
    Solve a wire model with all ports driven at once and derive its metrics.

    Raises:
        SolverError: If the fill or solve fails, or the solution is not
            passive.
    """
    config = config or SolverConfig()
    basis = build_basis(model)
    matrix = fill_impedance_matrix(model, frequency, basis=basis)
    excitation = excitation_vector(model, basis)
    currents = solve_currents(matrix, excitation)

    z_in = port_input_impedance(model, currents, basis)
    if z_in.real < -PASSIVITY_TOLERANCE * abs(z_in.value):
        raise SolverError(f"Non-passive input impedance {z_in.value:.4g}")
    pattern = far_field(
        model, currents, frequency, AngularGrid(step_deg=config.pattern_step_deg), basis
    )
    return EMReport(
        frequency=frequency,
        z_in=z_in,
        vswr=vswr(z_in, config.reference_impedance),
        phi=impedance_angle(z_in),
        g_diff=gain_difference(pattern, 0.0),
        pattern=pattern,
        input_power=input_power(excitation, currents),
        reference_impedance=config.reference_impedance,
    )


def evaluate_design(
    design: DesignVariables,
    tube: TubeSpec,
    frequency: Optional[float] = None,
    config: Optional[SolverConfig] = None,
    bounds: Optional[DesignBounds] = None,
) -> EMReport:
    """
    Run the full electromagnetic pipeline for one design.

    Args:
        design: Design variables.
        tube: Tube the antenna is mounted on.
        frequency: Design frequency in Hz (defaults to ``config.frequency``).
        config: Solver settings.
        bounds: When given, the design is checked against them first.

    Returns:
        The report with impedance, VSWR, impedance angle, gain difference and
        far-field pattern. Identical inputs give identical reports.

    Raises:
        ValidationError: If the design is out of bounds.
        GeometryError: If the wire model cannot be built.
        SolverError: If the solve fails.
    """
    config = config or SolverConfig()
    frequency = frequency or config.frequency
    started = time.perf_counter()
    model = _build(design, tube, frequency, config, bounds)
    report = evaluate_model(model, frequency, config)
    logger.debug(
        f"Evaluated {design.as_array().round(5).tolist()} in "
        f"{time.perf_counter() - started:.2f} s: Z={report.z_in.value:.2f} "
        f"VSWR={report.vswr:.3f} G={report.g_diff:.2f} dB phi={report.phi:.1f}"
    )
    return report


def frequency_sweep(
    design: DesignVariables,
    tube: TubeSpec,
    design_frequency: float,
    frequencies: Sequence[float],
    config: Optional[SolverConfig] = None,
) -> List[SweepPoint]:
    """
    Impedance of a fixed geometry over a list of frequencies.

    The wire model is built once at ``design_frequency`` and re-solved at
    every entry of ``frequencies``.
    """
    if len(frequencies) == 0:
        raise ValidationError("Frequency sweep needs at least one frequency")
    config = config or SolverConfig()
    model = _build(design, tube, design_frequency, config, None)
    basis = build_basis(model)
    points = []
    for frequency in frequencies:
        matrix = fill_impedance_matrix(model, float(frequency), basis=basis)
        currents = solve_currents(matrix, excitation_vector(model, basis))
        z_in = port_input_impedance(model, currents, basis)
        points.append(
            SweepPoint(
                frequency_hz=float(frequency),
                resistance=z_in.real,
                reactance=z_in.imag,
                vswr=vswr(z_in, config.reference_impedance),
                phi_deg=impedance_angle(z_in),
            )
        )
    logger.info(
        f"Swept {len(points)} frequencies from {np.min(frequencies) / 1e6:.1f} "
        f"to {np.max(frequencies) / 1e6:.1f} MHz"
    )
    return points
