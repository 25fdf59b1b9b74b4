# curvant/harness/training.py
"""
Training and transfer experiments.

``train`` runs episodic deep Q-learning until the simulation budget is spent
and records every design that met the success condition. ``transfer_run``
repeats that on a new configuration, warm-started from a checkpoint or from
scratch, and ``compare_transfer`` summarises paired warm/cold runs.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import binomtest

from curvant.exceptions import CheckpointError
from curvant.harness.checkpoint import Checkpoint, network_fingerprint
from curvant.rl.agent import epsilon_at, q_update, select_action
from curvant.rl.environment import Environment, EnvironmentFactory
from curvant.rl.network import QNetworkParams, init_params
from curvant.rl.replay import ReplayBuffer, Transition
from curvant.rl.state import ACTION_COUNT, STATE_SIZE
from curvant.schemas.run import RunConfig, RunMetrics, SuccessRecord

logger = logging.getLogger(__name__)


def layer_sizes(config: RunConfig) -> Tuple[int, ...]:
    return (STATE_SIZE, *config.rl.hidden_sizes, ACTION_COUNT)


@dataclass(eq=False)
class TrainingResult:
    metrics: RunMetrics
    checkpoint: Checkpoint


@dataclass(eq=False)
class TransferResult:
    metrics: RunMetrics
    best: Optional[SuccessRecord]
    checkpoint: Checkpoint
    warm: bool


def train(
    config: RunConfig,
    initial: Optional[QNetworkParams] = None,
    environment: Optional[Environment] = None,
) -> TrainingResult:
    """
    Run deep Q-learning for ``config.budget`` simulations.

    Args:
        config: Run configuration; ``config.seed`` fixes every random draw.
        initial: Network to start from (a copy is trained); a fresh network
            is initialised from the seed when omitted.
        environment: Environment to act in (default: built by
            ``EnvironmentFactory`` from ``config.environment``).

    Returns:
        The success metrics and a checkpoint of the final learner state.

    Raises:
        TrainingError: If a training loss becomes non-finite.
    """
    rl = config.rl
    rng = np.random.default_rng(config.seed)
    if initial is not None:
        params = initial.copy()
        params.optimizer.lr = rl.adam_lr
    else:
        params = init_params(rng, layer_sizes(config), rl.adam_lr)
    target = params.copy()
    env = environment or EnvironmentFactory.create_environment(config)
    replay = ReplayBuffer(rl.replay_capacity)

    successes: List[SuccessRecord] = []
    episode_lengths: List[int] = []
    last_success = 0
    started = time.perf_counter()
    logger.info(
        f"Training on {env} with budget {config.budget}, seed {config.seed}, "
        f"tube r1={config.tube.r1} m"
    )

    while env.simulations < config.budget:
        design, state = env.reset(rng)
        length = 0
        while length < rl.episode_cap and env.simulations < config.budget:
            epsilon = epsilon_at(env.simulations, config.budget, rl.epsilon_start, rl.epsilon_end)
            action = select_action(params, state, epsilon, rng)
            result = env.step(design, action)
            length += 1
            replay.push(Transition(state, int(action), result.reward, result.state, result.done))

            if len(replay) >= rl.batch_size:
                batch = replay.sample(rl.batch_size, rng)
                q_update(params, batch, rl.gamma, rl.alpha, target)
            if env.simulations % rl.target_sync == 0:
                target = params.copy()

            design, state = result.design, result.state
            if result.done:
                index = env.simulations
                report = result.report.summary() if result.report is not None else None
                successes.append(
                    SuccessRecord(
                        simulation_index=index,
                        attempts=index - last_success,
                        design=design,
                        report=report,
                    )
                )
                last_success = index
                if report is not None:
                    logger.info(
                        f"Success {len(successes)} at simulation {index}: "
                        f"VSWR={report.vswr:.3f} G={report.g_diff_db:.2f} dB "
                        f"phi={report.phi_deg:.2f} deg"
                    )
                else:
                    logger.info(f"Success {len(successes)} at simulation {index}")
                break
        episode_lengths.append(length)
        logger.debug(f"Episode {len(episode_lengths)} ended after {length} steps")

    metrics = RunMetrics(
        successes=successes,
        total_simulations=env.simulations,
        episode_lengths=episode_lengths,
        wall_clock_s=time.perf_counter() - started,
    )
    checkpoint = Checkpoint(
        params=params,
        rng_state=rng.bit_generator.state,
        fingerprint=network_fingerprint(params.layer_sizes),
        simulations=env.simulations,
        hyperparameters=rl.model_dump(mode="json"),
        replay=replay if rl.store_replay else None,
    )
    logger.info(
        f"Training finished: {len(successes)} successes in {env.simulations} simulations "
        f"({metrics.wall_clock_s:.1f} s)"
    )
    return TrainingResult(metrics=metrics, checkpoint=checkpoint)


def check_compatible(checkpoint: Checkpoint, config: RunConfig) -> None:
    """
    Raises:
        CheckpointError: If the checkpoint's network shape differs from the
            one ``config`` describes.
    """
    expected = network_fingerprint(layer_sizes(config))
    actual = network_fingerprint(checkpoint.params.layer_sizes)
    if checkpoint.fingerprint != expected or actual != expected:
        raise CheckpointError(
            f"Checkpoint network {checkpoint.fingerprint} does not match configured {expected}"
        )


def transfer_run(checkpoint: Optional[Checkpoint], config: RunConfig) -> TransferResult:
    """
    Train on ``config`` starting from a saved network, or cold when
    ``checkpoint`` is None.

    Only the network and its optimizer state carry over; the replay buffer
    and exploration schedule start fresh.

    Returns:
        Metrics, the best success (lowest VSWR, then lowest phi) or None,
        and the final checkpoint.

    Raises:
        CheckpointError: If the checkpoint does not fit the network shape.
    """
    if checkpoint is not None:
        check_compatible(checkpoint, config)
        logger.info(f"Warm start from {checkpoint.fingerprint} ({checkpoint.simulations} sims)")
    else:
        logger.info("Cold start")
    result = train(config, initial=checkpoint.params if checkpoint is not None else None)
    return TransferResult(
        metrics=result.metrics,
        best=result.metrics.best(),
        checkpoint=result.checkpoint,
        warm=checkpoint is not None,
    )


def calls_to_first_success(metrics: RunMetrics) -> int:
    """Simulation index of the first success, or budget + 1 when none."""
    if metrics.successes:
        return metrics.successes[0].simulation_index
    return metrics.total_simulations + 1


@dataclass
class TransferComparison:
    """Paired warm/cold outcome with a one-sided sign test."""
    warm_calls: List[int] = field(default_factory=list)
    cold_calls: List[int] = field(default_factory=list)
    warm_wins: int = 0
    cold_wins: int = 0
    ties: int = 0
    p_value: float = 1.0
    warm_best_vswr: List[Optional[float]] = field(default_factory=list)
    cold_best_vswr: List[Optional[float]] = field(default_factory=list)

    @property
    def median_warm(self) -> float:
        return float(np.median(self.warm_calls)) if self.warm_calls else float("nan")

    @property
    def median_cold(self) -> float:
        return float(np.median(self.cold_calls)) if self.cold_calls else float("nan")

    def summary_lines(self) -> List[str]:
        return [
            f"pairs: {len(self.warm_calls)}",
            f"warm first-success calls: {self.warm_calls}",
            f"cold first-success calls: {self.cold_calls}",
            f"median warm/cold: {self.median_warm:g} / {self.median_cold:g}",
            f"warm wins {self.warm_wins}, cold wins {self.cold_wins}, ties {self.ties}",
            f"sign test p-value (warm faster): {self.p_value:.4g}",
        ]


def _best_vswr(metrics: RunMetrics) -> Optional[float]:
    best = metrics.best()
    return best.report.vswr if best is not None else None


def compare_transfer(
    warm: Sequence[RunMetrics], cold: Sequence[RunMetrics]
) -> TransferComparison:
    """
    Compare paired runs by simulator calls to the first success.

    Runs without a success count as budget + 1 calls. Ties are dropped from
    the sign test.

    Raises:
        ValueError: If the two sequences differ in length.
    """
    if len(warm) != len(cold):
        raise ValueError(f"Need paired runs, got {len(warm)} warm and {len(cold)} cold")
    comparison = TransferComparison(
        warm_calls=[calls_to_first_success(m) for m in warm],
        cold_calls=[calls_to_first_success(m) for m in cold],
        warm_best_vswr=[_best_vswr(m) for m in warm],
        cold_best_vswr=[_best_vswr(m) for m in cold],
    )
    for w, c in zip(comparison.warm_calls, comparison.cold_calls):
        if w < c:
            comparison.warm_wins += 1
        elif c < w:
            comparison.cold_wins += 1
        else:
            comparison.ties += 1
    decided = comparison.warm_wins + comparison.cold_wins
    if decided:
        comparison.p_value = float(
            binomtest(comparison.warm_wins, decided, 0.5, alternative="greater").pvalue
        )
    return comparison
