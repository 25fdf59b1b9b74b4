# curvant/rl/replay.py
"""
Replay Memory

A ring buffer of bounded size holding the most recent transitions. Batches
are drawn uniformly with replacement from a caller-supplied generator, so
training is reproducible from the seed.
"""

from typing import Dict, NamedTuple

import numpy as np

from curvant.exceptions import TrainingError
from curvant.rl.state import STATE_SIZE


class Transition(NamedTuple):
    state: np.ndarray
    action: int
    reward: float
    next_state: np.ndarray
    done: bool


class TransitionBatch(NamedTuple):
    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray

    def __len__(self) -> int:
        return len(self.actions)


class ReplayBuffer:
    def __init__(self, capacity: int, state_size: int = STATE_SIZE):
        if capacity <= 0:
            raise ValueError("Replay capacity must be positive")
        self.capacity = capacity
        self.states = np.zeros((capacity, state_size))
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros(capacity)
        self.next_states = np.zeros((capacity, state_size))
        self.dones = np.zeros(capacity, dtype=bool)
        self.position = 0
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def push(self, transition: Transition) -> None:
        """Store a transition, overwriting the oldest one when full."""
        i = self.position
        self.states[i] = transition.state
        self.actions[i] = int(transition.action)
        self.rewards[i] = transition.reward
        self.next_states[i] = transition.next_state
        self.dones[i] = bool(transition.done)
        self.position = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> TransitionBatch:
        """
        Draw ``batch_size`` transitions uniformly with replacement.

        Raises:
            TrainingError: If the buffer is empty.
        """
        if self.size == 0:
            raise TrainingError("Cannot sample from an empty replay buffer")
        idx = rng.integers(self.size, size=batch_size)
        return TransitionBatch(
            states=self.states[idx],
            actions=self.actions[idx],
            rewards=self.rewards[idx],
            next_states=self.next_states[idx],
            dones=self.dones[idx],
        )

    def oldest_first(self) -> Dict[str, np.ndarray]:
        """Stored transitions in insertion order, as arrays."""
        order = (self.position - self.size + np.arange(self.size)) % self.capacity
        return {
            "states": self.states[order],
            "actions": self.actions[order],
            "rewards": self.rewards[order],
            "next_states": self.next_states[order],
            "dones": self.dones[order],
        }
