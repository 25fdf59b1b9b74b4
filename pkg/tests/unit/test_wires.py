# tests/unit/test_wires.py
"""
Unit tests for the tube wire grid, the dipoles and their assembly.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvant.exceptions import GeometryError
from curvant.geometry.wires import (
    Port,
    WireModel,
    assemble_model,
    build_dipole_wires,
    build_tube_mesh,
    dipole_azimuths,
    dipole_segment_count,
    single_wire,
    validate_model,
    wavelength,
)
from curvant.schemas.design import DesignVariables, TubeSpec
from curvant.schemas.run import ThetaMode

FREQUENCY = 2.45e9
PITCH = 0.1 * wavelength(FREQUENCY)


def _axial_mask(model: WireModel) -> np.ndarray:
    return np.abs(model.directions()[:, 2]) > 0.999


# ============================================================================
# Tube mesh
# ============================================================================

def test_tube_mesh_respects_pitch(tube):
    mesh = build_tube_mesh(tube, FREQUENCY)
    assert mesh.lengths().max() <= PITCH * (1 + 1e-9)
    assert np.all(mesh.lengths() > 0)
    # Every node lies on the cylinder.
    radial = np.hypot(mesh.starts[:, 0], mesh.starts[:, 1])
    np.testing.assert_allclose(radial, tube.r1)


def test_tube_mesh_uses_equal_area_radius(tube):
    mesh = build_tube_mesh(tube, FREQUENCY)
    pitch = mesh.lengths().max()
    np.testing.assert_allclose(mesh.radii * 2.0 * math.pi, pitch)


def test_tube_mesh_counts(tube):
    mesh = build_tube_mesh(tube, FREQUENCY)
    ring_nodes = 52
    n_axial = 21
    assert mesh.wire_count == (n_axial + 1) * ring_nodes + ring_nodes
    assert _axial_mask(mesh).sum() == ring_nodes * n_axial
    assert mesh.ports == ()


def test_longer_tube_gets_proportionally_more_axial_segments(tube):
    short = build_tube_mesh(tube, FREQUENCY)
    long = build_tube_mesh(TubeSpec(r1=tube.r1, l1=2 * tube.l1), FREQUENCY)
    n_short = _axial_mask(short).sum()
    n_long = _axial_mask(long).sum()
    ring_nodes = 52
    assert n_long // ring_nodes in (2 * (n_short // ring_nodes) - 1, 2 * (n_short // ring_nodes))


def test_small_tube_keeps_minimum_ring():
    mesh = build_tube_mesh(TubeSpec(r1=0.02, l1=0.05), FREQUENCY)
    ring = mesh.starts[~_axial_mask(mesh)]
    assert len(np.unique(np.round(np.arctan2(ring[:, 1], ring[:, 0]), 9))) == 16


def test_tube_mesh_rejects_nonpositive_frequency(tube):
    with pytest.raises(GeometryError):
        build_tube_mesh(tube, 0.0)


# ============================================================================
# Dipoles
# ============================================================================

@pytest.mark.parametrize(
    "mode, expected",
    [(ThetaMode.ADJACENT, [-30.0, 0.0, 30.0]), (ThetaMode.FULL_ARC, [-15.0, 0.0, 15.0])],
    ids=["adjacent", "full_arc"],
)
def test_dipole_azimuths(mode, expected):
    np.testing.assert_allclose(dipole_azimuths(30.0, mode), expected)


@pytest.mark.parametrize(
    "length, expected",
    [(0.06, 11), (0.055, 9), (0.01, 3), (0.15, 25)],
    ids=["6cm", "5.5cm", "1cm_minimum", "15cm"],
)
def test_dipole_segment_count_is_odd(length, expected):
    count = dipole_segment_count(length, FREQUENCY)
    assert count == expected
    assert length / count <= 0.05 * wavelength(FREQUENCY) * (1 + 1e-9)


def test_dipoles_are_fed_on_centre_with_alternating_signs(preset_100mm, tube):
    dipoles = build_dipole_wires(preset_100mm, tube)
    assert dipoles.wire_count == 3
    assert [p.sign for p in dipoles.ports] == [1, -1, 1]
    for port in dipoles.ports:
        assert abs(dipoles.centers()[port.segment, 2]) < 1e-12
    radial = np.hypot(dipoles.starts[:, 0], dipoles.starts[:, 1])
    np.testing.assert_allclose(radial, tube.r1 + preset_100mm.d1)
    np.testing.assert_allclose(np.abs(dipoles.directions()[:, 2]), 1.0)


def test_dipoles_mirror_across_centre_plane(preset_100mm, tube):
    dipoles = build_dipole_wires(preset_100mm, tube)
    first = dipoles.starts[dipoles.wire_ids == 0]
    last = dipoles.starts[dipoles.wire_ids == 2]
    mirrored = first * np.array([1.0, -1.0, 1.0])
    np.testing.assert_allclose(mirrored, last, atol=1e-15)


def test_overlapping_dipoles_rejected(tube):
    design = DesignVariables(d1=0.01, theta1=0.1, l3=(0.05, 0.05, 0.05))
    with pytest.raises(GeometryError, match="overlap"):
        build_dipole_wires(design, tube)


# ============================================================================
# Assembly and validation
# ============================================================================

def test_assembly_puts_tube_first(preset_100mm, tube):
    model = assemble_model(preset_100mm, tube)
    mesh = build_tube_mesh(tube)
    dipoles = build_dipole_wires(preset_100mm, tube)
    assert model.segment_count == mesh.segment_count + dipoles.segment_count
    assert model.wire_count == mesh.wire_count + 3
    assert len(model.ports) == 3
    for port, original in zip(model.ports, dipoles.ports):
        assert port.segment == original.segment + mesh.segment_count
        assert port.sign == original.sign


def test_assembly_is_deterministic(preset_100mm, tube):
    first = assemble_model(preset_100mm, tube)
    second = assemble_model(preset_100mm, tube)
    assert first.same_as(second)


@pytest.mark.parametrize(
    "model, match",
    [
        (single_wire((0, 0, 0), (0, 0, 0.01), 3, 0.001), "thin-wire"),
        (single_wire((0, 0, 0), (0, 0, 0.1), 3, 0.0001), "exceeds"),
        (
            WireModel(
                starts=np.zeros((1, 3)),
                ends=np.array([[0.0, 0.0, 0.01]]),
                radii=np.array([1e-4]),
                wire_ids=np.zeros(1, dtype=int),
                ports=(Port(4, 1),),
            ),
            "outside",
        ),
    ],
    ids=["stubby_segment", "long_segment", "port_out_of_range"],
)
def test_validate_model_rejects(model, match):
    with pytest.raises(GeometryError, match=match):
        validate_model(model, FREQUENCY)


l3_values = st.floats(0.01, 0.15)


@given(
    d1=st.floats(0.01, 0.05),
    theta1=st.floats(10.0, 90.0),
    l3=st.tuples(l3_values, l3_values, l3_values),
    r1=st.sampled_from([0.10, 0.12]),
)
def test_every_in_bounds_design_assembles(d1, theta1, l3, r1):
    design = DesignVariables(d1=d1, theta1=theta1, l3=l3)
    model = assemble_model(design, TubeSpec(r1=r1, l1=0.25))
    validate_model(model)
    assert len(model.ports) == 3
