# curvant/rl/__init__.py
"""
Design environment and deep Q-learning agent.
"""

from curvant.rl.agent import (
    RolloutResult,
    epsilon_at,
    greedy_rollout,
    q_update,
    select_action,
    td_targets,
)
from curvant.rl.environment import (
    AntennaEnvironment,
    Environment,
    EnvironmentFactory,
    LatticeTargetEnvironment,
    StepResult,
    env_reset,
    env_step,
)
from curvant.rl.network import Adam, QNetworkParams, init_params, loss_and_gradients, q_forward
from curvant.rl.replay import ReplayBuffer, Transition, TransitionBatch
from curvant.rl.state import ActionId, apply_action, encode_state, reward

__all__ = [
    "RolloutResult",
    "epsilon_at",
    "greedy_rollout",
    "q_update",
    "select_action",
    "td_targets",
    "AntennaEnvironment",
    "Environment",
    "EnvironmentFactory",
    "LatticeTargetEnvironment",
    "StepResult",
    "env_reset",
    "env_step",
    "Adam",
    "QNetworkParams",
    "init_params",
    "loss_and_gradients",
    "q_forward",
    "ReplayBuffer",
    "Transition",
    "TransitionBatch",
    "ActionId",
    "apply_action",
    "encode_state",
    "reward",
]
