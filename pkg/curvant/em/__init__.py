# curvant/em/__init__.py
"""
Thin-wire method-of-moments solver and the antenna metrics derived from it.
"""

from curvant.em.basis import Basis, build_basis
from curvant.em.farfield import far_field
from curvant.em.kernel import fill_impedance_matrix, wavenumber
from curvant.em.metrics import gain_difference, impedance_angle, vswr
from curvant.em.pipeline import evaluate_design, evaluate_model, frequency_sweep
from curvant.em.solver import (
    excitation_vector,
    input_power,
    port_currents,
    port_input_impedance,
    solve_currents,
)
from curvant.em.types import EMReport, FarFieldPattern

__all__ = [
    "Basis",
    "build_basis",
    "far_field",
    "fill_impedance_matrix",
    "wavenumber",
    "gain_difference",
    "impedance_angle",
    "vswr",
    "evaluate_design",
    "evaluate_model",
    "frequency_sweep",
    "excitation_vector",
    "input_power",
    "port_currents",
    "port_input_impedance",
    "solve_currents",
    "EMReport",
    "FarFieldPattern",
]
