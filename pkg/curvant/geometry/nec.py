# curvant/geometry/nec.py
"""
NEC2 card decks

Writes wire models as NEC2 input decks (CM/CE/GW/GE/EX/FR/RP/EN) so a design
can be cross-checked in NEC2 or 4NEC2, and reads the geometry, excitation
and frequency cards back.

Numbers are written free-field with 9 significant digits; lengths in
meters, frequency in MHz.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from curvant.exceptions import ValidationError
from curvant.geometry.wires import WireModel
from curvant.schemas.report import AngularGrid


def _num(value: float) -> str:
    return f"{value:.9g}"


def export_nec_deck(
    model: WireModel,
    design_frequency: float,
    pattern_request: Optional[AngularGrid] = None,
    comment: str = "curvant conformal dipole antenna",
) -> str:
    """
    Render a wire model as an NEC2 deck.

    One GW card is written per straight wire (tag = wire index + 1). Each
    port becomes a type-0 EX voltage source of +1 or -1 volt on the port
    segment, so the feed signs travel with the deck.

    Args:
        model: Geometry to export.
        design_frequency: Frequency in Hz (written in MHz on the FR card).
        pattern_request: Far-field grid for the RP card.
        comment: Text for the CM card.

    Returns:
        The deck as text, one card per line, starting with CM and ending
        with EN.
    """
    grid = pattern_request or AngularGrid()
    cards = [f"CM {comment}", f"CM design frequency {_num(design_frequency / 1e6)} MHz", "CE"]

    first_segment = {}
    for wire in range(model.wire_count):
        indices = np.flatnonzero(model.wire_ids == wire)
        first_segment[wire] = int(indices[0])
        p1 = model.starts[indices[0]]
        p2 = model.ends[indices[-1]]
        fields = [str(wire + 1), str(len(indices))]
        fields += [_num(v) for v in (*p1, *p2, model.radii[indices[0]])]
        cards.append("GW " + " ".join(fields))
    cards.append("GE 0")

    for port in model.ports:
        wire = int(model.wire_ids[port.segment])
        local = port.segment - first_segment[wire] + 1
        cards.append(f"EX 0 {wire + 1} {local} 0 {_num(float(port.sign))} 0")

    cards.append(f"FR 0 1 0 0 {_num(design_frequency / 1e6)} 0")
    # NEC measures theta from the zenith; the grid measures elevation from the horizon.
    theta_start = 90.0 - grid.elevations()[-1]
    cards.append(
        f"RP 0 {grid.n_elevation} {grid.n_azimuth} 1000 {_num(theta_start)} 0 "
        f"{_num(grid.step_deg)} {_num(grid.step_deg)}"
    )
    cards.append("EN")
    return "\n".join(cards) + "\n"


@dataclass
class ParsedWire:
    tag: int
    segments: int
    p1: np.ndarray
    p2: np.ndarray
    radius: float


@dataclass
class ParsedDeck:
    """Geometry, sources and frequency read from an NEC deck."""
    wires: List[ParsedWire] = field(default_factory=list)
    excitations: List[Tuple[int, int, complex]] = field(default_factory=list)
    frequency_hz: Optional[float] = None
    comments: List[str] = field(default_factory=list)

    def segment_endpoints(self) -> Tuple[np.ndarray, np.ndarray]:
        """Subdivide every GW card into its equal segments."""
        starts, ends = [], []
        for wire in self.wires:
            t = np.linspace(0.0, 1.0, wire.segments + 1)[:, None]
            points = wire.p1[None, :] + t * (wire.p2 - wire.p1)[None, :]
            starts.append(points[:-1])
            ends.append(points[1:])
        return np.concatenate(starts), np.concatenate(ends)


def parse_nec_deck(text: str) -> ParsedDeck:
    """
    Read CM, GW, EX and FR cards from a deck.

    Other cards are ignored. Fields may be separated by blanks, tabs or
    commas.

    Raises:
        ValidationError: If a GW, EX or FR card has too few fields.
    """
    deck = ParsedDeck()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if len(line) < 2:
            continue
        card = line[:2].upper()
        fields = line[2:].replace(",", " ").split()
        try:
            if card == "CM":
                deck.comments.append(line[2:].strip())
            elif card == "GW":
                values = [float(v) for v in fields[:9]]
                if len(values) < 9:
                    raise ValueError("GW needs 9 fields")
                deck.wires.append(
                    ParsedWire(
                        tag=int(values[0]),
                        segments=int(values[1]),
                        p1=np.array(values[2:5]),
                        p2=np.array(values[5:8]),
                        radius=values[8],
                    )
                )
            elif card == "EX":
                values = [float(v) for v in fields[:6]]
                if len(values) < 6:
                    raise ValueError("EX needs 6 fields")
                deck.excitations.append(
                    (int(values[1]), int(values[2]), complex(values[4], values[5]))
                )
            elif card == "FR":
                values = [float(v) for v in fields[:5]]
                if len(values) < 5:
                    raise ValueError("FR needs 5 fields")
                deck.frequency_hz = values[4] * 1e6
        except ValueError as exc:
            raise ValidationError(f"Line {line_no} ({card} card): {exc}") from exc
    return deck
