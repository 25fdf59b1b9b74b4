# curvant/rl/agent.py
"""
Deep Q-learning agent: epsilon-greedy action choice, the blended TD update
and greedy rollouts of a trained network.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from curvant.exceptions import TrainingError
from curvant.rl.environment import Environment
from curvant.rl.network import QNetworkParams, loss_and_gradients, q_forward
from curvant.rl.replay import TransitionBatch
from curvant.rl.state import ACTION_COUNT, ActionId, encode_state
from curvant.schemas.design import DesignVariables

logger = logging.getLogger(__name__)


def epsilon_at(
    step: int, total_steps: int, start: float = 0.5, end: float = 0.0
) -> float:
    """
    Linearly annealed exploration rate.

    Example:
        With the defaults, step 0 gives 0.5, the last step 0.0 and the
        midpoint 0.25.
    """
    if total_steps <= 0:
        return end
    fraction = min(max(step / total_steps, 0.0), 1.0)
    return start + (end - start) * fraction


def select_action(
    params: QNetworkParams,
    state: np.ndarray,
    epsilon: float,
    rng: np.random.Generator,
) -> ActionId:
    """
    Epsilon-greedy choice.

    One uniform draw decides between exploring and exploiting, so the
    generator advances the same way for every epsilon. Ties in the Q-values
    go to the lowest action id.
    """
    if rng.random() < epsilon:
        return ActionId(int(rng.integers(ACTION_COUNT)))
    return ActionId(int(np.argmax(q_forward(params, state))))


def td_targets(
    params: QNetworkParams,
    target_params: QNetworkParams,
    batch: TransitionBatch,
    gamma: float,
    alpha: float,
) -> np.ndarray:
    """
    Regression targets y = (1 - alpha) Q(s, a) + alpha (r + gamma max Q_target(s', .)),
    with the bootstrap term dropped on terminal transitions.
    """
    rows = np.arange(len(batch))
    current = q_forward(params, batch.states)[rows, batch.actions]
    bootstrap = np.max(q_forward(target_params, batch.next_states), axis=1)
    bootstrap = np.where(batch.dones, 0.0, bootstrap)
    return (1.0 - alpha) * current + alpha * (batch.rewards + gamma * bootstrap)


def q_update(
    params: QNetworkParams,
    batch: TransitionBatch,
    gamma: float,
    alpha: float,
    target_params: QNetworkParams,
    adam_lr: Optional[float] = None,
) -> Tuple[QNetworkParams, float]:
    """
    One ADAM step on the mean squared TD error of a batch.

    ``params`` is updated in place and returned with the batch loss.

    Raises:
        TrainingError: If the batch is empty or the loss is not finite.
    """
    if len(batch) == 0:
        raise TrainingError("Cannot update on an empty batch")
    if adam_lr is not None:
        params.optimizer.lr = adam_lr
    targets = td_targets(params, target_params, batch, gamma, alpha)
    loss, grads = loss_and_gradients(params, batch.states, batch.actions, targets)
    if not np.isfinite(loss):
        raise TrainingError(
            f"Non-finite loss {loss} at optimizer step {params.optimizer.t + 1}; "
            f"reward range [{batch.rewards.min()}, {batch.rewards.max()}]"
        )
    params.optimizer.step(params.arrays, grads)
    return params, loss


@dataclass
class RolloutResult:
    designs: List[DesignVariables] = field(default_factory=list)
    rewards: List[float] = field(default_factory=list)
    success: bool = False

    @property
    def steps(self) -> int:
        return len(self.rewards)


def greedy_rollout(
    params: QNetworkParams,
    env: Environment,
    start: DesignVariables,
    max_steps: int,
) -> RolloutResult:
    """
    Follow the greedy policy from ``start`` without learning.

    Stops at the first success or after ``max_steps`` steps. ``designs``
    starts with ``start`` and holds the design after every step.
    """
    result = RolloutResult(designs=[start])
    design = start
    state = encode_state(start, env.bounds)
    for _ in range(max_steps):
        action = ActionId(int(np.argmax(q_forward(params, state))))
        outcome = env.step(design, action)
        design, state = outcome.design, outcome.state
        result.designs.append(design)
        result.rewards.append(outcome.reward)
        if outcome.done:
            result.success = True
            break
    logger.debug(f"Greedy rollout: {result.steps} steps, success={result.success}")
    return result
