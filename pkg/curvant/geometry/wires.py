# curvant/geometry/wires.py
"""
Wire Models

Segmented thin-wire geometry of the antenna: a cylindrical wire grid that
stands in for the conductive tube, and three straight dipoles parallel to
the tube axis. The tube axis is z, the model is centred on z = 0, and
azimuth 0 (the +x direction) is the outward normal of the centre dipole.

Every straight run of equal segments belongs to one "wire"; the NEC export
writes one GW card per wire.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy import constants

from curvant.exceptions import GeometryError
from curvant.schemas.design import DesignVariables, TubeSpec
from curvant.schemas.run import ThetaMode

logger = logging.getLogger(__name__)

DEFAULT_FREQUENCY = 2.45e9
DEFAULT_ELEMENT_RADIUS = 5e-4
DEFAULT_PITCH_FRACTION = 0.1
DIPOLE_SEGMENT_FRACTION = 0.05
MIN_RING_NODES = 16
THIN_WIRE_RATIO = 4.0
# Alternating feed signs realise the 180 degree line between neighbours.
FEED_SIGNS = (1, -1, 1)


def wavelength(frequency: float) -> float:
    """Free-space wavelength in meters."""
    return constants.c / frequency


@dataclass(frozen=True)
class Port:
    """Feed on the centre of ``segment`` driven with voltage ``sign`` * V0."""
    segment: int
    sign: int


@dataclass(frozen=True, eq=False)
class WireModel:
    """
    Segmented wire geometry with feed ports.

    Attributes:
        starts: (S, 3) segment start points in meters.
        ends: (S, 3) segment end points in meters.
        radii: (S,) wire radius of each segment in meters.
        wire_ids: (S,) index of the straight wire each segment belongs to;
            segments of one wire are contiguous and ordered start to end.
        ports: Feed ports.
    """
    starts: np.ndarray
    ends: np.ndarray
    radii: np.ndarray
    wire_ids: np.ndarray
    ports: Tuple[Port, ...] = field(default_factory=tuple)

    @property
    def segment_count(self) -> int:
        return int(self.starts.shape[0])

    @property
    def wire_count(self) -> int:
        return int(self.wire_ids.max()) + 1 if self.segment_count else 0

    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.ends - self.starts, axis=1)

    def directions(self) -> np.ndarray:
        """Unit vectors from start to end of every segment."""
        return (self.ends - self.starts) / self.lengths()[:, None]

    def centers(self) -> np.ndarray:
        return 0.5 * (self.starts + self.ends)

    def same_as(self, other: "WireModel") -> bool:
        """Bit-identical geometry and ports."""
        return (
            np.array_equal(self.starts, other.starts)
            and np.array_equal(self.ends, other.ends)
            and np.array_equal(self.radii, other.radii)
            and np.array_equal(self.wire_ids, other.wire_ids)
            and self.ports == other.ports
        )

    @classmethod
    def concat(cls, models: Sequence["WireModel"]) -> "WireModel":
        """
        Union of several models.

        Segment and wire indices of later models are shifted past the earlier
        ones, so ports keep pointing at the same physical segments.
        """
        starts, ends, radii, wire_ids, ports = [], [], [], [], []
        segment_offset = 0
        wire_offset = 0
        for model in models:
            starts.append(model.starts)
            ends.append(model.ends)
            radii.append(model.radii)
            wire_ids.append(model.wire_ids + wire_offset)
            ports.extend(Port(p.segment + segment_offset, p.sign) for p in model.ports)
            segment_offset += model.segment_count
            wire_offset += model.wire_count
        return cls(
            starts=np.concatenate(starts),
            ends=np.concatenate(ends),
            radii=np.concatenate(radii),
            wire_ids=np.concatenate(wire_ids).astype(int),
            ports=tuple(ports),
        )


def _subdivide(p1: np.ndarray, p2: np.ndarray, count: int) -> Tuple[np.ndarray, np.ndarray]:
    t = np.linspace(0.0, 1.0, count + 1)[:, None]
    points = p1[None, :] + t * (p2 - p1)[None, :]
    points[-1] = p2
    return points[:-1], points[1:]


def _build(wires: List[Tuple[np.ndarray, np.ndarray, int, float]], ports=()) -> WireModel:
    starts, ends, radii, wire_ids = [], [], [], []
    for index, (p1, p2, count, radius) in enumerate(wires):
        s, e = _subdivide(np.asarray(p1, float), np.asarray(p2, float), count)
        starts.append(s)
        ends.append(e)
        radii.append(np.full(count, radius))
        wire_ids.append(np.full(count, index, dtype=int))
    return WireModel(
        starts=np.concatenate(starts),
        ends=np.concatenate(ends),
        radii=np.concatenate(radii),
        wire_ids=np.concatenate(wire_ids),
        ports=tuple(ports),
    )


def build_tube_mesh(
    tube: TubeSpec,
    design_frequency: float = DEFAULT_FREQUENCY,
    pitch_fraction: float = DEFAULT_PITCH_FRACTION,
) -> WireModel:
    """
    Build the cylindrical wire grid standing in for the tube.

    The grid has ``n_axial + 1`` rings of ``M`` nodes joined by chords, and
    ``M`` axial runs joining corresponding ring nodes. ``M`` is the even
    count (at least 16) whose chord does not exceed the target pitch
    ``pitch_fraction * wavelength``. Every grid wire gets the equal-area
    radius pitch / (2*pi), where pitch is the larger of the chord and the
    axial segment length.

    Raises:
        GeometryError: If the rounding of ring and axial counts leaves a
            segment too short for its radius (length/radius <= 4).
    """
    if design_frequency <= 0:
        raise GeometryError("Design frequency must be positive")
    target = pitch_fraction * wavelength(design_frequency)

    ring_nodes = max(MIN_RING_NODES, math.ceil(2.0 * math.pi * tube.r1 / target - 1e-9))
    ring_nodes += ring_nodes % 2
    n_axial = max(1, math.ceil(tube.l1 / target - 1e-9))

    chord = 2.0 * tube.r1 * math.sin(math.pi / ring_nodes)
    axial = tube.l1 / n_axial
    pitch = max(chord, axial)
    radius = pitch / (2.0 * math.pi)
    if min(chord, axial) / radius <= THIN_WIRE_RATIO:
        raise GeometryError(
            f"Tube mesh with chord {chord * 1e3:.2f} mm and axial step {axial * 1e3:.2f} mm "
            f"violates the thin-wire ratio at radius {radius * 1e3:.3f} mm"
        )

    phi = 2.0 * math.pi * np.arange(ring_nodes) / ring_nodes
    x = tube.r1 * np.cos(phi)
    y = tube.r1 * np.sin(phi)
    # Same expression as _subdivide so ring and axial nodes coincide exactly.
    z = -tube.l1 / 2.0 + np.linspace(0.0, 1.0, n_axial + 1) * tube.l1

    wires = []
    for zk in z:
        for j in range(ring_nodes):
            k = (j + 1) % ring_nodes
            wires.append(((x[j], y[j], zk), (x[k], y[k], zk), 1, radius))
    for j in range(ring_nodes):
        wires.append(((x[j], y[j], z[0]), (x[j], y[j], z[-1]), n_axial, radius))

    logger.debug(
        f"Tube mesh: {ring_nodes} nodes per ring, {n_axial + 1} rings, pitch {pitch * 1e3:.2f} mm"
    )
    return _build(wires)


def dipole_azimuths(theta1: float, theta_mode: ThetaMode = ThetaMode.ADJACENT) -> np.ndarray:
    """Azimuths in degrees of dipoles 0, 1, 2."""
    spread = theta1 if ThetaMode(theta_mode) == ThetaMode.ADJACENT else theta1 / 2.0
    return np.array([-spread, 0.0, spread])


def dipole_segment_count(length: float, design_frequency: float = DEFAULT_FREQUENCY) -> int:
    """Smallest odd count (at least 3) giving segments no longer than lambda/20."""
    count = math.ceil(length / (DIPOLE_SEGMENT_FRACTION * wavelength(design_frequency)) - 1e-9)
    count = max(3, count)
    return count if count % 2 else count + 1


def build_dipole_wires(
    design: DesignVariables,
    tube: TubeSpec,
    element_radius: float = DEFAULT_ELEMENT_RADIUS,
    design_frequency: float = DEFAULT_FREQUENCY,
    theta_mode: ThetaMode = ThetaMode.ADJACENT,
) -> WireModel:
    """
    Build the three dipoles.

    Each dipole is parallel to the tube axis, centred at z = 0, at radial
    distance r1 + d1 and fed on its centre segment. Feed signs alternate
    (+1, -1, +1).

    Raises:
        GeometryError: If neighbouring dipoles would touch (arc between
            them shorter than the element diameter).
    """
    rho = tube.r1 + design.d1
    azimuths = dipole_azimuths(design.theta1, theta_mode)
    arc = rho * math.radians(azimuths[2] - azimuths[1])
    if arc < 2.0 * element_radius:
        raise GeometryError(
            f"Dipoles overlap: arc {arc * 1e3:.3f} mm between planes is below "
            f"the element diameter {2e3 * element_radius:.3f} mm"
        )

    wires, ports = [], []
    first_segment = 0
    for length, azimuth, sign in zip(design.l3, azimuths, FEED_SIGNS):
        count = dipole_segment_count(length, design_frequency)
        phi = math.radians(azimuth)
        x, y = rho * math.cos(phi), rho * math.sin(phi)
        wires.append(((x, y, -length / 2.0), (x, y, length / 2.0), count, element_radius))
        ports.append(Port(first_segment + count // 2, sign))
        first_segment += count
    return _build(wires, ports)


def validate_model(
    model: WireModel,
    design_frequency: float = DEFAULT_FREQUENCY,
    pitch_fraction: float = DEFAULT_PITCH_FRACTION,
) -> None:
    """
    Check the thin-wire invariants of a model.

    Raises:
        GeometryError: On zero-length segments, ports past the segment list,
            length/radius <= 4, or segments longer than
            ``pitch_fraction`` wavelengths.
    """
    lengths = model.lengths()
    if np.any(lengths <= 0.0):
        raise GeometryError("Model contains zero-length segments")
    for port in model.ports:
        if not 0 <= port.segment < model.segment_count:
            raise GeometryError(f"Port segment {port.segment} is outside the model")
        if port.sign not in (1, -1):
            raise GeometryError(f"Port sign must be +1 or -1, got {port.sign}")
    ratio = lengths / model.radii
    if np.any(ratio <= THIN_WIRE_RATIO):
        raise GeometryError(
            f"Segment length/radius ratio {ratio.min():.2f} violates the thin-wire limit"
        )
    limit = pitch_fraction * wavelength(design_frequency) * (1.0 + 1e-9)
    if np.any(lengths > limit):
        raise GeometryError(
            f"Segment of {lengths.max() * 1e3:.2f} mm exceeds {limit * 1e3:.2f} mm"
        )


def assemble_model(
    design: DesignVariables,
    tube: TubeSpec,
    design_frequency: float = DEFAULT_FREQUENCY,
    element_radius: float = DEFAULT_ELEMENT_RADIUS,
    pitch_fraction: float = DEFAULT_PITCH_FRACTION,
    theta_mode: ThetaMode = ThetaMode.ADJACENT,
) -> WireModel:
    """
    Union of the tube mesh and the dipoles, tube segments first.

    The result depends only on the arguments, so identical inputs give
    bit-identical segment lists.
    """
    mesh = build_tube_mesh(tube, design_frequency, pitch_fraction)
    dipoles = build_dipole_wires(design, tube, element_radius, design_frequency, theta_mode)
    model = WireModel.concat([mesh, dipoles])
    validate_model(model, design_frequency, pitch_fraction)
    return model


def single_wire(
    p1: Sequence[float],
    p2: Sequence[float],
    segments: int,
    radius: float,
    feed: bool = True,
) -> WireModel:
    """A straight wire, optionally fed on its centre segment."""
    ports = (Port(segments // 2, 1),) if feed else ()
    return _build([(np.asarray(p1, float), np.asarray(p2, float), segments, radius)], ports)
