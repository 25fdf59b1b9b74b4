# curvant/em/basis.py
"""
Current basis for the thin-wire solver.

Each unknown is a constant current running from the centre of one segment,
through a wire node, to the centre of a neighbouring segment. A node where
k segments meet carries k - 1 unknowns (all referenced to the first
incident segment), which enforces Kirchhoff's current law; free wire ends
carry none, so current vanishes at wire tips. Charge is uniform on each
segment.

Two sparse incidence matrices describe the basis:

* ``currents`` (2S x N): signed membership of half-segments in each unknown,
  relative to the segment direction. Half 2s runs from the start of segment
  s to its centre, half 2s + 1 from the centre to the end.
* ``charges`` (S x N): +1 on the segment where an unknown ends, -1 where it
  starts.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy import sparse

from curvant.exceptions import GeometryError, SolverError
from curvant.geometry.wires import WireModel

# Endpoints closer than this are the same node.
NODE_RESOLUTION = 1e-9


@dataclass(frozen=True, eq=False)
class Basis:
    currents: sparse.csr_matrix
    charges: sparse.csr_matrix
    half_starts: np.ndarray
    half_mids: np.ndarray
    half_dirs: np.ndarray
    half_lengths: np.ndarray
    half_radii: np.ndarray
    port_halves: Tuple[Tuple[int, int], ...]
    port_signs: Tuple[int, ...]

    @property
    def size(self) -> int:
        return int(self.currents.shape[1])

    def half_currents(self, currents: np.ndarray) -> np.ndarray:
        """Current on every half-segment along its segment direction."""
        return self.currents @ currents


def _node_ids(model: WireModel) -> Tuple[np.ndarray, np.ndarray]:
    points = np.concatenate([model.starts, model.ends])
    keys = np.round(points / NODE_RESOLUTION).astype(np.int64)
    _, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    count = model.segment_count
    return inverse[:count], inverse[count:]


def build_basis(model: WireModel) -> Basis:
    """
    Derive the current basis of a wire model.

    Raises:
        GeometryError: If a segment starts and ends on the same node.
        SolverError: If two segments join the same pair of nodes, or the
            model carries no current unknowns.
    """
    start_node, end_node = _node_ids(model)
    if np.any(start_node == end_node):
        raise GeometryError("Model contains zero-length segments")
    pairs = np.sort(np.stack([start_node, end_node], axis=1), axis=1)
    if len(np.unique(pairs, axis=0)) != len(pairs):
        raise SolverError("Coincident segments make the impedance matrix singular")

    # incident[node] -> list of (segment, half index next to node, leaving direction)
    incident = defaultdict(list)
    for s in range(model.segment_count):
        incident[int(start_node[s])].append((s, 2 * s, 1.0))
        incident[int(end_node[s])].append((s, 2 * s + 1, -1.0))

    rows_c: List[int] = []
    rows_q: List[int] = []
    cols_c: List[int] = []
    cols_q: List[int] = []
    vals_c: List[float] = []
    vals_q: List[float] = []
    unknown = 0
    for node in sorted(incident):
        entries = incident[node]
        ref_segment, ref_half, ref_leaving = entries[0]
        for segment, half, leaving in entries[1:]:
            # Path: centre of ref segment -> node -> centre of segment.
            rows_c += [ref_half, half]
            vals_c += [-ref_leaving, leaving]
            cols_c += [unknown, unknown]
            rows_q += [ref_segment, segment]
            vals_q += [-1.0, 1.0]
            cols_q += [unknown, unknown]
            unknown += 1
    if unknown == 0:
        raise SolverError("Model has no current unknowns")

    segments = model.segment_count
    currents = sparse.csr_matrix((vals_c, (rows_c, cols_c)), shape=(2 * segments, unknown))
    charges = sparse.csr_matrix((vals_q, (rows_q, cols_q)), shape=(segments, unknown))

    centers = model.centers()
    half_starts = np.empty((2 * segments, 3))
    half_starts[0::2] = model.starts
    half_starts[1::2] = centers
    half_dirs = np.repeat(model.directions(), 2, axis=0)
    half_lengths = np.repeat(0.5 * model.lengths(), 2)
    half_mids = half_starts + 0.5 * half_lengths[:, None] * half_dirs

    return Basis(
        currents=currents,
        charges=charges,
        half_starts=half_starts,
        half_mids=half_mids,
        half_dirs=half_dirs,
        half_lengths=half_lengths,
        half_radii=np.repeat(model.radii, 2),
        port_halves=tuple((2 * p.segment, 2 * p.segment + 1) for p in model.ports),
        port_signs=tuple(p.sign for p in model.ports),
    )
