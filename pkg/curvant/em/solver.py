# curvant/em/solver.py
"""
Dense solve and port quantities.

Ports apply a uniform impressed field along their segment (a gap spanning
the segment). The voltage splits evenly over the segment's two halves, and
the port current is the mean of the half-segment currents, so that
sum(V * conj(I)) over unknowns equals sum(V_port * conj(I_port)).
"""

import logging
from typing import Optional

import numpy as np
from scipy.linalg import get_lapack_funcs, lu_factor, lu_solve

from curvant.em.basis import Basis, build_basis
from curvant.exceptions import SolverError
from curvant.geometry.wires import WireModel
from curvant.schemas.report import ComplexImpedance

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-8
MIN_RCOND = 1e3 * np.finfo(float).eps


def solve_currents(matrix: np.ndarray, excitation: np.ndarray) -> np.ndarray:
    """
    Solve Z I = V by LU decomposition with partial pivoting.

    Raises:
        SolverError: If the matrix is not square, the excitation length does
            not match, the matrix is numerically singular (``condition`` holds
            the reciprocal 1-norm condition estimate), or the relative residual
            exceeds 1e-8.
    """
    matrix = np.asarray(matrix)
    excitation = np.asarray(excitation)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise SolverError(f"Impedance matrix must be square, got shape {matrix.shape}")
    if excitation.shape != (matrix.shape[0],):
        raise SolverError(
            f"Excitation length {excitation.shape} does not match matrix size {matrix.shape[0]}"
        )

    anorm = np.linalg.norm(matrix, 1)
    lu, piv = lu_factor(matrix, check_finite=True)
    gecon = get_lapack_funcs("gecon", (lu,))
    rcond, _ = gecon(lu, anorm, norm="1")
    if not np.isfinite(rcond) or rcond < MIN_RCOND:
        raise SolverError(
            f"Impedance matrix is singular or ill-conditioned (rcond={rcond:.3e})",
            condition=float(rcond),
        )

    currents = lu_solve((lu, piv), excitation)
    scale = np.linalg.norm(excitation)
    residual = np.linalg.norm(matrix @ currents - excitation) / (scale if scale else 1.0)
    if not residual <= RESIDUAL_TOLERANCE:
        raise SolverError(
            f"Solve did not converge (relative residual {residual:.3e})", condition=float(rcond)
        )
    return currents


def excitation_vector(
    model: WireModel, basis: Optional[Basis] = None, voltage: complex = 1.0
) -> np.ndarray:
    """Right-hand side for all ports driven at ``sign * voltage``."""
    basis = basis if basis is not None else build_basis(model)
    field = np.zeros(basis.half_lengths.shape[0], dtype=complex)
    for (first, second), sign in zip(basis.port_halves, basis.port_signs):
        field[first] += 0.5 * sign * voltage
        field[second] += 0.5 * sign * voltage
    return basis.currents.T @ field


def port_currents(
    model: WireModel, currents: np.ndarray, basis: Optional[Basis] = None
) -> np.ndarray:
    """Current through each port along its segment direction."""
    basis = basis if basis is not None else build_basis(model)
    halves = basis.half_currents(currents)
    return np.array([0.5 * (halves[a] + halves[b]) for a, b in basis.port_halves])


def port_input_impedance(
    model: WireModel,
    currents: np.ndarray,
    basis: Optional[Basis] = None,
    voltage: complex = 1.0,
) -> ComplexImpedance:
    """
    Combined input impedance of the parallel-fed ports.

    Z_in = |V0|^2 / sum_i conj(V_i) I_i with V_i = sign_i * V0, the
    impedance that draws the same complex power as all ports together.
    A single port reduces to V / I.

    Raises:
        SolverError: If the model has no ports or no current flows into them.
    """
    basis = basis if basis is not None else build_basis(model)
    if not basis.port_halves:
        raise SolverError("Model has no ports")
    port_i = port_currents(model, currents, basis)
    port_v = np.array(basis.port_signs, dtype=complex) * voltage
    total = np.sum(np.conj(port_v) * port_i)
    if total == 0 or not np.isfinite(total):
        raise SolverError("Total port current is zero")
    return ComplexImpedance.from_complex(abs(voltage) ** 2 / total)


def input_power(excitation: np.ndarray, currents: np.ndarray) -> float:
    """Time-averaged power delivered by the sources (peak phasors)."""
    return 0.5 * float(np.real(np.vdot(currents, excitation)))
