# curvant/geometry/__init__.py
"""
Antenna geometry: bounds bookkeeping, wire models and NEC deck export.
"""

from curvant.geometry.bounds import clamp_and_flag, in_bounds
from curvant.geometry.nec import ParsedDeck, export_nec_deck, parse_nec_deck
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

__all__ = [
    "clamp_and_flag",
    "in_bounds",
    "ParsedDeck",
    "export_nec_deck",
    "parse_nec_deck",
    "Port",
    "WireModel",
    "assemble_model",
    "build_dipole_wires",
    "build_tube_mesh",
    "dipole_azimuths",
    "dipole_segment_count",
    "single_wire",
    "validate_model",
    "wavelength",
]
