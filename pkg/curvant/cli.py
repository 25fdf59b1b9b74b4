# curvant/cli.py
"""
Command-line interface.

    curvant train     --config run.toml [--seed N] [--out DIR]
    curvant evaluate  --config run.toml [--preset NAME | --d1 .. --theta1 .. --l3 a b c]
                      [--radius R] [--sweep F_LO F_HI N]
    curvant transfer  --config run.toml (--checkpoint PATH | --cold) [--paired] [--pairs K]

Exit codes: 0 success, 2 configuration or checkpoint problems, 1 any other
failure.
"""

import functools
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import click
import numpy as np

from curvant import __version__
from curvant.core.config import load_run_config, settings
from curvant.em.pipeline import evaluate_design, frequency_sweep
from curvant.exceptions import CheckpointError, ConfigurationError, CurvantError
from curvant.geometry.nec import export_nec_deck, parse_nec_deck
from curvant.geometry.wires import assemble_model
from curvant.harness.checkpoint import load_checkpoint, save_checkpoint
from curvant.harness.metrics_io import (
    write_metrics_csv,
    write_pattern_csv,
    write_report_json,
    write_sweep_csv,
)
from curvant.harness.training import compare_transfer, train, transfer_run
from curvant.schemas.design import DesignVariables, preset_design
from curvant.schemas.report import AngularGrid
from curvant.schemas.run import RunConfig, RunMetrics

logger = logging.getLogger(__name__)

EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _handle_errors(command):
    """Map curvant exceptions onto exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (ConfigurationError, CheckpointError) as exc:
            logger.error(f"{command.__name__}: {exc}")
            click.echo(f"Error: {exc}", err=True)
            raise SystemExit(EXIT_USAGE)
        except CurvantError as exc:
            logger.error(f"{command.__name__}: {exc}")
            click.echo(f"Error: {exc}", err=True)
            raise SystemExit(EXIT_RUNTIME)

    return wrapper


def _load(config_path: Optional[str], seed: Optional[int], budget: Optional[int]) -> RunConfig:
    config = load_run_config(config_path) if config_path else RunConfig()
    updates = {}
    if seed is not None:
        updates["seed"] = seed
    if budget is not None:
        updates["budget"] = budget
    return config.model_copy(update=updates) if updates else config


def _out_dir(out: Optional[str]) -> Path:
    path = Path(out or settings.OUTPUT_DIR)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _metrics_lines(metrics: RunMetrics) -> List[str]:
    lines = [
        f"simulations: {metrics.total_simulations}",
        f"successes: {len(metrics.successes)}",
        f"episodes: {len(metrics.episode_lengths)}",
    ]
    best = metrics.best()
    if best is not None:
        d = best.design
        lines += [
            f"best design (simulation {best.simulation_index}): d1={d.d1:g} m "
            f"theta1={d.theta1:g} deg l3=({d.l3[0]:g}, {d.l3[1]:g}, {d.l3[2]:g}) m",
            f"best VSWR={best.report.vswr:.4f} G={best.report.g_diff_db:.3f} dB "
            f"phi={best.report.phi_deg:.3f} deg "
            f"Z=({best.report.z_in.real:.3f}{best.report.z_in.imag:+.3f}j) ohm",
        ]
    elif metrics.successes:
        first = metrics.successes[0].design
        lines.append(f"first success design: {first.as_array().tolist()}")
    return lines


def _write_summary(out: Path, title: str, lines: List[str]) -> Path:
    path = out / "summary.txt"
    path.write_text("\n".join([title, *lines]) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


common_options = [
    click.option("--config", "config_path", type=click.Path(), default=None,
                 help="TOML run configuration."),
    click.option("--seed", type=click.IntRange(min=0), default=None, help="Override the seed."),
    click.option("--out", type=click.Path(file_okay=False), default=None,
                 help="Output directory (default: CURVANT_OUTPUT_DIR)."),
]


def with_common_options(command):
    for option in reversed(common_options):
        command = option(command)
    return command


@click.group()
@click.version_option(__version__, prog_name="curvant")
@click.option("--log-level", default=None, help="Logging level (default: CURVANT_LOG_LEVEL).")
def cli(log_level: Optional[str]) -> None:
    """Reinforcement-learning design of conformal dipole arrays on tubes."""
    logging.basicConfig(level=(log_level or settings.LOG_LEVEL).upper())


@cli.command("train")
@with_common_options
@click.option("--budget", type=click.IntRange(min=0), default=None,
              help="Override the simulation budget.")
@click.option("--checkpoint", "checkpoint_path", type=click.Path(dir_okay=False), default=None,
              help="Where to write the final checkpoint.")
@_handle_errors
def cmd_train(config_path, seed, out, budget, checkpoint_path) -> None:
    """Train from scratch and write metrics, checkpoint and summary."""
    config = _load(config_path, seed, budget)
    out_dir = _out_dir(out)
    result = train(config)
    write_metrics_csv(result.metrics, out_dir / "metrics.csv")
    ckpt_path = Path(checkpoint_path or config.checkpoint_path or out_dir / "checkpoint.ckpt")
    save_checkpoint(result.checkpoint, ckpt_path)
    _write_summary(
        out_dir,
        f"curvant train (seed {config.seed}, budget {config.budget}, r1={config.tube.r1} m)",
        _metrics_lines(result.metrics) + [f"checkpoint: {ckpt_path}"],
    )
    click.echo(f"{len(result.metrics.successes)} successes; results in {out_dir}")


def _design_from_options(
    config: RunConfig,
    preset: Optional[str],
    d1: Optional[float],
    theta1: Optional[float],
    l3: Optional[Tuple[float, float, float]],
    radius: Optional[float],
):
    tube = config.tube
    design = config.design
    if preset:
        try:
            design, tube = preset_design(preset)
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc
    overrides = {"d1": d1, "theta1": theta1, "l3": tuple(l3) if l3 else None}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if design is None:
        if len(overrides) != 3:
            raise ConfigurationError(
                "No design given: use --preset, a [design] section, or --d1/--theta1/--l3"
            )
        design = DesignVariables(**overrides)
    elif overrides:
        design = design.model_copy(update=overrides)
    if radius is not None:
        tube = tube.model_copy(update={"r1": radius})
    violation = config.bounds.describe_violation(design)
    if violation:
        raise ConfigurationError(f"Design out of bounds: {violation}")
    return design, tube


@cli.command("evaluate")
@with_common_options
@click.option("--preset", default=None, help="Named design: tube-100mm or tube-120mm.")
@click.option("--d1", type=float, default=None, help="Dipole-to-tube spacing in meters.")
@click.option("--theta1", type=float, default=None, help="Angular separation in degrees.")
@click.option("--l3", type=float, nargs=3, default=None, help="Three dipole lengths in meters.")
@click.option("--radius", type=float, default=None, help="Override the tube radius in meters.")
@click.option("--frequency", type=float, default=None, help="Override the frequency in Hz.")
@click.option("--sweep", type=(float, float, int), default=None,
              help="Frequency sweep F_LO F_HI N for post-analysis.")
@_handle_errors
def cmd_evaluate(config_path, seed, out, preset, d1, theta1, l3, radius, frequency, sweep) -> None:
    """Evaluate one design and export report, pattern and NEC deck."""
    config = _load(config_path, seed, None)
    if sweep is not None:
        f_lo, f_hi, count = sweep
        if count < 1 or f_lo <= 0 or f_hi < f_lo:
            raise ConfigurationError(f"Invalid sweep {f_lo} {f_hi} {count}")
    design, tube = _design_from_options(config, preset, d1, theta1, l3 or None, radius)
    out_dir = _out_dir(out)
    solver = config.solver
    if frequency is not None:
        solver = solver.model_copy(update={"frequency": frequency})

    report = evaluate_design(design, tube, solver.frequency, solver)
    summary = report.summary()
    write_report_json(summary, out_dir / "report.json")
    write_pattern_csv(report.pattern, out_dir / "pattern.csv")

    model = assemble_model(
        design, tube, solver.frequency, solver.element_radius,
        solver.mesh_pitch_fraction, solver.theta_mode,
    )
    deck = export_nec_deck(
        model, solver.frequency, AngularGrid(step_deg=solver.pattern_step_deg),
        comment=f"curvant design d1={design.d1:g} theta1={design.theta1:g} r1={tube.r1:g}",
    )
    parsed = parse_nec_deck(deck)
    if len(parsed.wires) != model.wire_count or len(parsed.excitations) != len(model.ports):
        raise CurvantError("Exported NEC deck does not read back to the model")
    deck_path = out_dir / "design.nec"
    deck_path.write_text(deck, encoding="utf-8")

    lines = [
        f"design: d1={design.d1:g} m theta1={design.theta1:g} deg l3={list(design.l3)} m",
        f"tube: r1={tube.r1:g} m l1={tube.l1:g} m",
        f"frequency: {solver.frequency / 1e6:g} MHz",
        f"Z_in = {summary.z_in.real:.3f} {summary.z_in.imag:+.3f}j ohm",
        f"VSWR = {summary.vswr:.4f} (ref {summary.reference_impedance:g} ohm)",
        f"phi = {summary.phi_deg:.3f} deg",
        f"G = {summary.g_diff_db:.3f} dB, peak gain {summary.peak_gain_dbi:.2f} dBi",
        f"NEC deck: {deck_path} ({len(parsed.wires)} GW cards)",
    ]
    if sweep is not None:
        points = frequency_sweep(
            design, tube, solver.frequency, np.linspace(f_lo, f_hi, count), solver
        )
        write_sweep_csv(points, out_dir / "sweep.csv")
        lines.append(f"sweep: {count} points written to {out_dir / 'sweep.csv'}")
    _write_summary(out_dir, "curvant evaluate", lines)
    click.echo(f"VSWR={summary.vswr:.4f} G={summary.g_diff_db:.2f} dB phi={summary.phi_deg:.2f}")


@cli.command("transfer")
@with_common_options
@click.option("--budget", type=click.IntRange(min=0), default=None,
              help="Override the simulation budget.")
@click.option("--checkpoint", "checkpoint_path", type=click.Path(dir_okay=False), default=None,
              help="Checkpoint to warm-start from.")
@click.option("--cold", is_flag=True, help="Start from a fresh network.")
@click.option("--paired", is_flag=True, help="Run warm and cold starts and compare them.")
@click.option("--pairs", type=click.IntRange(min=1), default=1,
              help="Number of seeds for --paired (seed, seed+1, ...).")
@_handle_errors
def cmd_transfer(config_path, seed, out, budget, checkpoint_path, cold, paired, pairs) -> None:
    """Restart learning on a new configuration from a saved network."""
    config = _load(config_path, seed, budget)
    source = checkpoint_path or config.checkpoint_path
    checkpoint = None
    if not cold or paired:
        if source is None:
            raise CheckpointError("No checkpoint given; pass --checkpoint or use --cold")
        checkpoint = load_checkpoint(source)
    out_dir = _out_dir(out)
    title = f"curvant transfer (seed {config.seed}, budget {config.budget}, r1={config.tube.r1} m)"

    if not paired:
        result = transfer_run(None if cold else checkpoint, config)
        write_metrics_csv(result.metrics, out_dir / "metrics.csv")
        save_checkpoint(result.checkpoint, out_dir / "checkpoint.ckpt")
        start = "warm" if result.warm else "cold"
        _write_summary(out_dir, title, [f"start: {start}", *_metrics_lines(result.metrics)])
        click.echo(f"{start} start: {len(result.metrics.successes)} successes")
        return

    warm_runs, cold_runs = [], []
    lines = []
    for offset in range(pairs):
        seeded = config.model_copy(update={"seed": config.seed + offset})
        suffix = "" if pairs == 1 else f"_{seeded.seed}"
        warm = transfer_run(checkpoint, seeded)
        cold_result = transfer_run(None, seeded)
        write_metrics_csv(warm.metrics, out_dir / f"metrics_warm{suffix}.csv")
        write_metrics_csv(cold_result.metrics, out_dir / f"metrics_cold{suffix}.csv")
        warm_runs.append(warm.metrics)
        cold_runs.append(cold_result.metrics)
        lines += [f"[seed {seeded.seed} warm]", *_metrics_lines(warm.metrics)]
        lines += [f"[seed {seeded.seed} cold]", *_metrics_lines(cold_result.metrics)]
    comparison = compare_transfer(warm_runs, cold_runs)
    lines += ["[comparison]", *comparison.summary_lines()]
    _write_summary(out_dir, title, lines)
    click.echo(f"warm wins {comparison.warm_wins}/{pairs}, p={comparison.p_value:.4g}")


def main() -> None:  # pragma: no cover
    cli()
