# curvant/harness/metrics_io.py
"""
CSV and JSON artifacts written by the harness and the CLI, and the readers
that parse them back.

Floats are written with ``repr`` so files round-trip exactly and identical
runs produce byte-identical files.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from curvant.em.types import FarFieldPattern
from curvant.schemas.report import EMReportSummary, SweepPoint
from curvant.schemas.run import RunMetrics

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

METRICS_HEADER = (
    "success_ordinal",
    "simulation_index",
    "attempts",
    "vswr",
    "g_diff_db",
    "phi_deg",
    "d1_m",
    "theta1_deg",
    "l3_0_m",
    "l3_1_m",
    "l3_2_m",
)
PATTERN_HEADER = ("elevation", "azimuth", "gain_dBi")
SWEEP_HEADER = ("frequency_hz", "resistance", "reactance", "vswr", "phi_deg")


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _parse(value: str) -> Optional[float]:
    return None if value == "" else float(value)


def _writer(handle):
    return csv.writer(handle, lineterminator="\n")


def attempts_curve(metrics: RunMetrics) -> List[Tuple[int, int]]:
    """
    (success ordinal, attempts) pairs, where attempts counts the simulations
    since the previous success (or since the start for the first one).

    Example:
        Successes at simulations 40 and 55 give [(1, 40), (2, 15)].
    """
    curve = []
    previous = 0
    for ordinal, success in enumerate(metrics.successes, start=1):
        curve.append((ordinal, success.simulation_index - previous))
        previous = success.simulation_index
    return curve


def write_metrics_csv(metrics: RunMetrics, path: PathLike) -> Path:
    """One row per success; metric columns stay empty when no report exists."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = _writer(handle)
        writer.writerow(METRICS_HEADER)
        for (ordinal, attempts), success in zip(attempts_curve(metrics), metrics.successes):
            report = success.report
            writer.writerow(
                [
                    ordinal,
                    success.simulation_index,
                    attempts,
                    _fmt(report.vswr if report else None),
                    _fmt(report.g_diff_db if report else None),
                    _fmt(report.phi_deg if report else None),
                    *(_fmt(v) for v in success.design.as_array()),
                ]
            )
    logger.info(f"Wrote {len(metrics.successes)} successes to {path}")
    return path


def read_metrics_csv(path: PathLike) -> List[Dict[str, Optional[float]]]:
    """
    Parse a metrics CSV.

    Raises:
        ValueError: If the header does not match.
    """
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != METRICS_HEADER:
            raise ValueError(f"Unexpected metrics header: {reader.fieldnames}")
        rows = []
        for row in reader:
            parsed: Dict[str, Optional[float]] = {k: _parse(v) for k, v in row.items()}
            for key in ("success_ordinal", "simulation_index", "attempts"):
                parsed[key] = int(parsed[key])
            rows.append(parsed)
    return rows


def write_pattern_csv(pattern: FarFieldPattern, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = _writer(handle)
        writer.writerow(PATTERN_HEADER)
        for i, elevation in enumerate(pattern.elevations):
            for j, azimuth in enumerate(pattern.azimuths):
                writer.writerow([_fmt(elevation), _fmt(azimuth), _fmt(pattern.gain_dbi[i, j])])
    return path


def read_pattern_csv(path: PathLike) -> np.ndarray:
    """(K, 3) array of elevation, azimuth, gain_dBi rows."""
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != PATTERN_HEADER:
            raise ValueError(f"Unexpected pattern header: {header}")
        return np.array([[float(v) for v in row] for row in reader]).reshape(-1, 3)


def write_sweep_csv(points: Sequence[SweepPoint], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = _writer(handle)
        writer.writerow(SWEEP_HEADER)
        for point in points:
            writer.writerow([_fmt(getattr(point, name)) for name in SWEEP_HEADER])
    return path


def read_sweep_csv(path: PathLike) -> List[SweepPoint]:
    with Path(path).open(newline="", encoding="utf-8") as handle:
        return [
            SweepPoint(**{k: float(v) for k, v in row.items()})
            for row in csv.DictReader(handle)
        ]


def write_report_json(summary: EMReportSummary, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(summary.model_dump(mode="json"), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return path


def read_report_json(path: PathLike) -> EMReportSummary:
    return EMReportSummary.model_validate_json(Path(path).read_text(encoding="utf-8"))
