# tests/unit/test_network.py
"""
Unit tests for the numpy Q-network and its ADAM optimizer.
"""

import numpy as np
import pytest

from curvant.rl.network import (
    DEFAULT_LAYER_SIZES,
    Adam,
    init_params,
    loss_and_gradients,
    q_forward,
)

SMALL = (15, 8, 8, 11)


def test_default_shape(rng):
    params = init_params(rng)
    assert params.layer_sizes == DEFAULT_LAYER_SIZES == (15, 100, 100, 11)
    assert params.names() == ("w0", "b0", "w1", "b1", "w2", "b2")
    assert params.arrays["w1"].shape == (100, 100)
    assert params.all_finite()


def test_init_respects_fan_in_limits(rng):
    params = init_params(rng)
    for i, fan_in in enumerate(DEFAULT_LAYER_SIZES[:-1]):
        limit = 1.0 / np.sqrt(fan_in)
        assert np.abs(params.arrays[f"w{i}"]).max() <= limit
        assert np.abs(params.arrays[f"b{i}"]).max() <= limit


def test_init_is_seeded():
    first = init_params(np.random.default_rng(8), SMALL)
    second = init_params(np.random.default_rng(8), SMALL)
    for name in first.names():
        np.testing.assert_array_equal(first.arrays[name], second.arrays[name])


def test_forward_accepts_single_state_and_batch(rng):
    params = init_params(rng, SMALL)
    states = rng.uniform(size=(4, 15))
    batch = q_forward(params, states)
    assert batch.shape == (4, 11)
    np.testing.assert_allclose(q_forward(params, states[2]), batch[2])


def test_copy_is_independent(rng):
    params = init_params(rng, SMALL)
    clone = params.copy()
    clone.arrays["w0"] += 1.0
    clone.optimizer.t = 5
    assert not np.array_equal(clone.arrays["w0"], params.arrays["w0"])
    assert params.optimizer.t == 0


@pytest.mark.parametrize("seed", range(5), ids=[f"batch_{s}" for s in range(5)])
def test_gradients_match_finite_differences(seed):
    rng = np.random.default_rng(seed)
    params = init_params(rng, SMALL)
    states = rng.uniform(size=(6, 15))
    actions = rng.integers(11, size=6)
    targets = rng.normal(size=6)
    _, grads = loss_and_gradients(params, states, actions, targets)

    eps = 1e-5
    for name in params.names():
        direction = rng.normal(size=params.arrays[name].shape)
        original = params.arrays[name].copy()
        params.arrays[name] = original + eps * direction
        plus, _ = loss_and_gradients(params, states, actions, targets)
        params.arrays[name] = original - eps * direction
        minus, _ = loss_and_gradients(params, states, actions, targets)
        params.arrays[name] = original
        numeric = (plus - minus) / (2 * eps)
        analytic = float(np.sum(grads[name] * direction))
        assert analytic == pytest.approx(numeric, rel=1e-4, abs=1e-8), name


def test_loss_is_mean_squared_error_on_taken_actions(rng):
    params = init_params(rng, SMALL)
    states = rng.uniform(size=(3, 15))
    actions = np.array([0, 5, 10])
    q = q_forward(params, states)
    targets = q[np.arange(3), actions] + np.array([1.0, -2.0, 0.0])
    loss, _ = loss_and_gradients(params, states, actions, targets)
    assert loss == pytest.approx(5.0 / 3.0)


# ============================================================================
# ADAM
# ============================================================================

def test_adam_first_step_moves_by_learning_rate():
    optimizer = Adam(lr=1e-3)
    params = {"w": np.array([1.0, 1.0, 1.0])}
    grads = {"w": np.array([0.5, -2.0, 0.1])}
    optimizer.step(params, grads)
    np.testing.assert_allclose(params["w"], [1.0 - 1e-3, 1.0 + 1e-3, 1.0 - 1e-3], rtol=1e-6)
    assert optimizer.t == 1


def test_adam_leaves_zero_gradient_untouched():
    optimizer = Adam(lr=1e-2)
    params = {"w": np.array([0.3, -0.7])}
    optimizer.step(params, {"w": np.zeros(2)})
    np.testing.assert_array_equal(params["w"], [0.3, -0.7])
