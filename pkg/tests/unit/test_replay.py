# tests/unit/test_replay.py
"""
Unit tests for the replay ring buffer.
"""

import numpy as np
import pytest

from curvant.exceptions import TrainingError
from curvant.rl.replay import ReplayBuffer, Transition


def _transition(i: int) -> Transition:
    state = np.full(15, float(i))
    return Transition(state, i % 11, float(-i), state + 1.0, i % 2 == 0)


def test_push_and_len():
    buffer = ReplayBuffer(4)
    assert len(buffer) == 0
    for i in range(3):
        buffer.push(_transition(i))
    assert len(buffer) == 3
    assert buffer.position == 3


def test_full_buffer_overwrites_oldest():
    buffer = ReplayBuffer(4)
    for i in range(6):
        buffer.push(_transition(i))
    assert len(buffer) == 4
    stored = buffer.oldest_first()
    np.testing.assert_array_equal(stored["rewards"], [-2.0, -3.0, -4.0, -5.0])
    np.testing.assert_array_equal(stored["actions"], [2, 3, 4, 5])
    np.testing.assert_array_equal(stored["dones"], [True, False, True, False])
    assert stored["states"][0, 0] == 2.0
    assert stored["next_states"][-1, 0] == 6.0


def test_sample_shapes(rng):
    buffer = ReplayBuffer(10)
    for i in range(5):
        buffer.push(_transition(i))
    batch = buffer.sample(32, rng)
    assert len(batch) == 32
    assert batch.states.shape == (32, 15)
    assert batch.next_states.shape == (32, 15)
    assert set(batch.actions.tolist()) <= {0, 1, 2, 3, 4}
    # Rows stay aligned across fields.
    np.testing.assert_array_equal(batch.rewards, -batch.states[:, 0])


def test_sampling_is_uniform():
    buffer = ReplayBuffer(10)
    for i in range(10):
        buffer.push(_transition(i))
    rng = np.random.default_rng(17)
    draws = 11_000
    counts = np.bincount(buffer.sample(draws, rng).actions, minlength=10)[:10]
    expected = draws / 10
    sigma = np.sqrt(draws * 0.1 * 0.9)
    assert np.all(np.abs(counts - expected) < 4 * sigma)


def test_sampling_is_seeded():
    buffer = ReplayBuffer(10)
    for i in range(10):
        buffer.push(_transition(i))
    first = buffer.sample(8, np.random.default_rng(2)).actions
    second = buffer.sample(8, np.random.default_rng(2)).actions
    np.testing.assert_array_equal(first, second)


def test_empty_buffer_cannot_sample(rng):
    with pytest.raises(TrainingError):
        ReplayBuffer(3).sample(1, rng)


def test_capacity_must_be_positive():
    with pytest.raises(ValueError):
        ReplayBuffer(0)
