# curvant/em/kernel.py
"""
Impedance matrix fill for the thin-wire method of moments.

The scattered field of the wire currents is split into a vector-potential
part (currents on half-segments) and a scalar-potential part (uniform charge
on segments). Both use the reduced thin-wire kernel

    g(R) = exp(-jkR) / (4 pi R),  R = sqrt(|r - r'|^2 + a^2)

with the source on the wire axis and ``a`` the source wire radius. The 1/R
part is integrated in closed form over each straight piece; the remaining
smooth part (exp(-jkR) - 1) / R uses Gauss-Legendre quadrature.

Testing is by point matching: the vector potential is sampled at half-segment
midpoints, the scalar potential at segment centres. With ``C`` and ``D`` the
current and charge incidence matrices of ``curvant.em.basis``:

    Z = j w mu  C^T (h * T * Psi_half) C  +  D^T (Psi_seg / L) D / (j w eps)

Point matching is only reciprocal where source and test pieces mirror each
other (equal lengths and radii). The tube mesh mixes ring chords, axial
wires and dipoles of different radii, so the filled matrix is replaced by
its symmetric part (Z + Z^T) / 2, which a reciprocal medium requires.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy import constants

from curvant.core.config import settings
from curvant.em.basis import Basis, build_basis
from curvant.exceptions import SolverError
from curvant.geometry.wires import WireModel

logger = logging.getLogger(__name__)

GAUSS_ORDER = 4
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


def wavenumber(frequency: float) -> float:
    return 2.0 * np.pi * frequency / constants.c


def piece_potentials(
    points: np.ndarray,
    starts: np.ndarray,
    directions: np.ndarray,
    lengths: np.ndarray,
    radii: np.ndarray,
    k: float,
) -> np.ndarray:
    """
    Integrate the reduced kernel over straight source pieces.

    Args:
        points: (P, 3) observation points.
        starts, directions, lengths, radii: Source pieces, (Q, 3), (Q, 3),
            (Q,) and (Q,).
        k: Wavenumber in rad/m.

    Returns:
        (P, Q) complex array of integrals of g along each piece.
    """
    offset = points[:, None, :] - starts[None, :, :]
    z = np.einsum("pqk,qk->pq", offset, directions)
    rho2 = np.maximum(np.einsum("pqk,pqk->pq", offset, offset) - z * z, 0.0)
    rho2 += radii[None, :] ** 2
    rho = np.sqrt(rho2)
    length = lengths[None, :]

    singular = np.arcsinh((length - z) / rho) - np.arcsinh(-z / rho)
    smooth = np.zeros(z.shape, dtype=complex)
    for node, weight in zip(_GAUSS_NODES, _GAUSS_WEIGHTS):
        distance = np.sqrt((0.5 * length * (1.0 + node) - z) ** 2 + rho2)
        smooth += weight * np.expm1(-1j * k * distance) / distance
    smooth *= 0.5 * length
    return (singular + smooth) / (4.0 * np.pi)


def fill_impedance_matrix(
    model: WireModel,
    frequency: float,
    basis: Optional[Basis] = None,
    workers: Optional[int] = None,
    chunk_rows: Optional[int] = None,
) -> np.ndarray:
    """
    Build the N x N impedance matrix of a wire model.

    Rows are test (match) unknowns, columns source unknowns; the returned
    matrix is symmetric. The fill is split into row chunks that may run on a thread pool; chunks write
    disjoint rows, so the result does not depend on the worker count.

    Args:
        model: Wire model satisfying the thin-wire invariants.
        frequency: Frequency in Hz.
        basis: Pre-built basis of ``model``.
        workers: Threads for the fill (default ``settings.FILL_WORKERS``).
        chunk_rows: Observation rows per chunk (default
            ``settings.FILL_CHUNK_ROWS``).

    Raises:
        SolverError: If segments coincide or the fill is not finite.
    """
    basis = basis if basis is not None else build_basis(model)
    workers = workers or settings.FILL_WORKERS
    chunk_rows = chunk_rows or settings.FILL_CHUNK_ROWS
    k = wavenumber(frequency)
    omega = 2.0 * np.pi * frequency
    started = time.perf_counter()

    seg_centers = model.centers()
    seg_starts = model.starts
    seg_dirs = model.directions()
    seg_lengths = model.lengths()
    currents_t = basis.currents.T.tocsr()
    charges_t = basis.charges.T.tocsr()

    n_half = basis.half_mids.shape[0]
    n_seg = model.segment_count
    vector_part = np.empty((n_half, basis.size), dtype=complex)
    scalar_part = np.empty((n_seg, basis.size), dtype=complex)

    def fill_vector(lo: int) -> None:
        hi = min(lo + chunk_rows, n_half)
        psi = piece_potentials(
            basis.half_mids[lo:hi],
            basis.half_starts,
            basis.half_dirs,
            basis.half_lengths,
            basis.half_radii,
            k,
        )
        psi *= basis.half_lengths[lo:hi, None] * (basis.half_dirs[lo:hi] @ basis.half_dirs.T)
        vector_part[lo:hi] = (currents_t @ psi.T).T

    def fill_scalar(lo: int) -> None:
        hi = min(lo + chunk_rows, n_seg)
        psi = piece_potentials(
            seg_centers[lo:hi], seg_starts, seg_dirs, seg_lengths, model.radii, k
        )
        psi /= seg_lengths[None, :]
        scalar_part[lo:hi] = (charges_t @ psi.T).T

    tasks = [(fill_vector, lo) for lo in range(0, n_half, chunk_rows)]
    tasks += [(fill_scalar, lo) for lo in range(0, n_seg, chunk_rows)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda task: task[0](task[1]), tasks))
    else:
        for fill, lo in tasks:
            fill(lo)

    matrix = 1j * omega * constants.mu_0 * (currents_t @ vector_part)
    matrix += (charges_t @ scalar_part) / (1j * omega * constants.epsilon_0)
    if not np.all(np.isfinite(matrix)):
        raise SolverError("Impedance matrix fill produced non-finite entries")

    asymmetry = np.abs(matrix - matrix.T).max() / np.abs(matrix).max()
    matrix = 0.5 * (matrix + matrix.T)

    logger.debug(
        f"Filled {basis.size}x{basis.size} impedance matrix in "
        f"{time.perf_counter() - started:.3f} s (asymmetry {asymmetry:.2e} symmetrised)"
    )
    return matrix
