# tests/unit/test_kernel.py
"""
Unit tests for the current basis and the impedance matrix fill.
"""

import numpy as np
import pytest
from scipy import constants

from curvant.em.basis import build_basis
from curvant.em.kernel import fill_impedance_matrix, piece_potentials, wavenumber
from curvant.exceptions import GeometryError, SolverError
from curvant.geometry.wires import WireModel, assemble_model, build_tube_mesh, single_wire

FREQUENCY = 2.45e9
WAVELENGTH = constants.c / FREQUENCY


def _dipole(segments: int = 21, length: float = 0.06, radius: float = 5e-4) -> WireModel:
    return single_wire((0, 0, -length / 2), (0, 0, length / 2), segments, radius)


# ============================================================================
# Basis
# ============================================================================

def test_straight_wire_has_one_unknown_per_interior_node():
    basis = build_basis(_dipole(21))
    assert basis.size == 20
    assert basis.currents.shape == (42, 20)
    assert basis.charges.shape == (21, 20)


def test_wire_tips_carry_no_current():
    basis = build_basis(_dipole(5))
    halves = basis.half_currents(np.ones(basis.size))
    assert halves[0] == 0.0 and halves[-1] == 0.0
    np.testing.assert_allclose(halves[1:-1], 1.0)


def test_charge_is_conserved_per_unknown(tube):
    basis = build_basis(build_tube_mesh(tube))
    np.testing.assert_allclose(np.asarray(basis.charges.sum(axis=0)).ravel(), 0.0)


def test_junction_unknowns_follow_kirchhoff(tube):
    mesh = build_tube_mesh(tube)
    basis = build_basis(mesh)
    ring_nodes, rings = 52, 22
    # Interior ring nodes join four segments, end ring nodes three.
    expected = ring_nodes * (rings - 2) * 3 + 2 * ring_nodes * 2
    assert basis.size == expected


def test_port_halves_point_at_feed_segment():
    basis = build_basis(_dipole(21))
    assert basis.port_halves == ((20, 21),)
    assert basis.port_signs == (1,)


def test_coincident_segments_are_rejected():
    segment = np.array([[0.0, 0.0, 0.0]]), np.array([[0.0, 0.0, 0.01]])
    model = WireModel(
        starts=np.concatenate([segment[0], segment[0]]),
        ends=np.concatenate([segment[1], segment[1]]),
        radii=np.full(2, 1e-4),
        wire_ids=np.array([0, 1]),
    )
    with pytest.raises(SolverError, match="Coincident"):
        build_basis(model)


def test_degenerate_segment_is_rejected():
    model = WireModel(
        starts=np.zeros((1, 3)),
        ends=np.array([[0.0, 0.0, 1e-12]]),
        radii=np.array([1e-4]),
        wire_ids=np.zeros(1, dtype=int),
    )
    with pytest.raises(GeometryError):
        build_basis(model)


# ============================================================================
# Kernel integral
# ============================================================================

def test_piece_potential_far_from_short_piece():
    k = wavenumber(FREQUENCY)
    length = 1e-4
    distance = 1.0
    value = piece_potentials(
        np.array([[distance, 0.0, length / 2]]),
        np.zeros((1, 3)),
        np.array([[0.0, 0.0, 1.0]]),
        np.array([length]),
        np.array([1e-6]),
        k,
    )[0, 0]
    expected = length * np.exp(-1j * k * distance) / (4 * np.pi * distance)
    assert value == pytest.approx(expected, rel=1e-6)


def test_self_potential_is_finite_and_log_dominated():
    k = wavenumber(FREQUENCY)
    length, radius = 3e-3, 5e-4
    value = piece_potentials(
        np.array([[0.0, 0.0, length / 2]]),
        np.zeros((1, 3)),
        np.array([[0.0, 0.0, 1.0]]),
        np.array([length]),
        np.array([radius]),
        k,
    )[0, 0]
    closed_form = 2 * np.arcsinh(length / (2 * radius)) / (4 * np.pi)
    assert np.isfinite(value)
    assert value.real == pytest.approx(closed_form, rel=1e-2)
    assert value.imag < 0


# ============================================================================
# Matrix fill
# ============================================================================

def test_single_unknown_has_positive_resistance():
    matrix = fill_impedance_matrix(_dipole(2, length=0.03), FREQUENCY)
    assert matrix.shape == (1, 1)
    assert matrix[0, 0].real > 0


def test_straight_dipole_matrix_is_symmetric_and_mirror_invariant():
    matrix = fill_impedance_matrix(_dipole(21), FREQUENCY)
    atol = 1e-9 * np.abs(matrix).max()
    np.testing.assert_allclose(matrix, matrix.T, rtol=1e-6, atol=atol)
    np.testing.assert_allclose(matrix[::-1, ::-1], matrix, rtol=1e-6, atol=atol)


def test_assembled_tube_model_is_reciprocal(tube, preset_100mm):
    model = assemble_model(preset_100mm, tube, FREQUENCY, pitch_fraction=0.25)
    matrix = fill_impedance_matrix(model, FREQUENCY)
    asymmetry = np.abs(matrix - matrix.T).max() / np.abs(matrix).max()
    assert asymmetry < 1e-6
    np.testing.assert_array_equal(matrix, matrix.T)


def _pair(separation: float) -> WireModel:
    first = single_wire((0, 0, -0.01), (0, 0, 0.01), 3, 5e-4, feed=False)
    second = single_wire((separation, 0, -0.01), (separation, 0, 0.01), 3, 5e-4, feed=False)
    return WireModel.concat([first, second])


def test_mutual_terms_decay_with_distance():
    near = fill_impedance_matrix(_pair(10 * WAVELENGTH), FREQUENCY)
    far = fill_impedance_matrix(_pair(20 * WAVELENGTH), FREQUENCY)
    self_term = np.abs(near[0, 0])
    mutual_near = np.abs(near[0, 2])
    mutual_far = np.abs(far[0, 2])
    assert mutual_near < 1e-2 * self_term
    assert mutual_near / mutual_far == pytest.approx(2.0, rel=0.1)


def test_fill_does_not_depend_on_workers():
    model = single_wire((0, 0, -0.06), (0, 0, 0.06), 41, 5e-4)
    serial = fill_impedance_matrix(model, FREQUENCY, workers=1, chunk_rows=7)
    threaded = fill_impedance_matrix(model, FREQUENCY, workers=4, chunk_rows=7)
    np.testing.assert_allclose(threaded, serial, rtol=1e-10, atol=0)


def test_fill_scales_with_frequency_and_size():
    small = fill_impedance_matrix(_dipole(11, length=0.06), FREQUENCY)
    large = fill_impedance_matrix(_dipole(11, length=0.12, radius=1e-3), FREQUENCY / 2)
    np.testing.assert_allclose(large, small, rtol=1e-9)
