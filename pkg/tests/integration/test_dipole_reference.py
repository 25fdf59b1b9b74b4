# tests/integration/test_dipole_reference.py
"""
Reference checks of the wire solver on isolated dipoles, where closed-form
results exist.
"""

import dataclasses

import numpy as np
import pytest
from scipy import constants
from scipy.special import sici

from curvant.em.basis import build_basis
from curvant.em.farfield import far_field
from curvant.em.kernel import fill_impedance_matrix
from curvant.em.pipeline import evaluate_model
from curvant.em.solver import (
    excitation_vector,
    input_power,
    port_input_impedance,
    solve_currents,
)
from curvant.geometry.wires import Port, WireModel, single_wire
from curvant.schemas.run import SolverConfig

FREQUENCY = 2.45e9
WAVELENGTH = constants.c / FREQUENCY
ETA = np.sqrt(constants.mu_0 / constants.epsilon_0)


def induced_emf_impedance(kl: float) -> complex:
    """Induced-EMF input impedance of a thin centre-fed dipole of electrical length kl."""
    euler = np.euler_gamma
    si1, ci1 = sici(kl)
    si2, ci2 = sici(2 * kl)
    resistance = ETA / (2 * np.pi) * (
        euler + np.log(kl) - ci1
        + 0.5 * np.sin(kl) * (si2 - 2 * si1)
        + 0.5 * np.cos(kl) * (euler + np.log(kl / 2) + ci2 - 2 * ci1)
    )
    # Radius-dependent term vanishes for kl = pi.
    reactance = ETA / (4 * np.pi) * (
        2 * si1 + np.cos(kl) * (2 * si1 - si2) - np.sin(kl) * (2 * ci1 - ci2)
    )
    return complex(resistance, reactance)


def dipole(segments: int, length: float = WAVELENGTH / 2, radius: float = WAVELENGTH / 1000):
    return single_wire((0, 0, -length / 2), (0, 0, length / 2), segments, radius)


def solve(model: WireModel, frequency: float = FREQUENCY):
    basis = build_basis(model)
    matrix = fill_impedance_matrix(model, frequency, basis=basis)
    excitation = excitation_vector(model, basis)
    currents = solve_currents(matrix, excitation)
    return basis, excitation, currents


def input_impedance(model: WireModel, frequency: float = FREQUENCY) -> complex:
    basis, _, currents = solve(model, frequency)
    return port_input_impedance(model, currents, basis).value


def test_reference_values():
    z = induced_emf_impedance(np.pi)
    assert z.real == pytest.approx(73.08, abs=0.05)
    assert z.imag == pytest.approx(42.5, abs=0.05)


def test_half_wave_dipole_matches_induced_emf():
    z = input_impedance(dipole(21))
    reference = induced_emf_impedance(np.pi)
    assert z.real == pytest.approx(reference.real, rel=0.15)
    assert z.imag == pytest.approx(reference.imag, abs=20.0)


@pytest.mark.parametrize("coarse_segments", [21, 41], ids=["21_to_41", "41_to_81"])
def test_refinement_converges(coarse_segments):
    coarse = input_impedance(dipole(coarse_segments))
    fine = input_impedance(dipole(2 * coarse_segments - 1))
    assert abs(fine - coarse) / abs(fine) < 0.05


def test_electrical_scaling_invariance():
    base = input_impedance(dipole(21))
    doubled = input_impedance(
        dipole(21, length=WAVELENGTH, radius=WAVELENGTH / 500), FREQUENCY / 2
    )
    assert doubled == pytest.approx(base, rel=1e-9)


def test_distant_dipoles_combine_in_parallel():
    single = input_impedance(dipole(21))
    spacing = 50 * WAVELENGTH
    wires = []
    for index, sign in enumerate((1, -1, 1)):
        wire = single_wire(
            (index * spacing, 0, -WAVELENGTH / 4),
            (index * spacing, 0, WAVELENGTH / 4),
            21,
            WAVELENGTH / 1000,
        )
        wires.append(dataclasses.replace(wire, ports=(Port(10, sign),)))
    combined = input_impedance(WireModel.concat(wires))
    assert combined == pytest.approx(single / 3, rel=0.02)


def test_half_wave_dipole_gain_and_power_balance():
    model = dipole(21)
    basis, excitation, currents = solve(model)
    pattern = far_field(model, currents, FREQUENCY, basis=basis)
    assert pattern.gain_at(0.0, 0.0) == pytest.approx(2.15, abs=0.15)
    assert pattern.radiated_power == pytest.approx(input_power(excitation, currents), rel=0.05)


def test_evaluate_model_on_dipole():
    report = evaluate_model(dipole(21), FREQUENCY, SolverConfig())
    assert report.vswr >= 1.0
    assert report.z_in.real > 0
    # Omnidirectional in azimuth.
    assert abs(report.g_diff) < 0.01
