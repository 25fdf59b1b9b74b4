# curvant/rl/network.py
"""
Q-network: a small fully connected ReLU network in numpy with explicit
backpropagation and an ADAM optimizer.
"""

import copy
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from curvant.rl.state import ACTION_COUNT, STATE_SIZE

DEFAULT_LAYER_SIZES = (STATE_SIZE, 100, 100, ACTION_COUNT)


class Adam:
    """
    Adaptive moment estimation.

    Keeps first and second moment estimates per named parameter and a step
    counter; ``step`` updates the parameters in place.
    """

    def __init__(
        self, lr: float = 1e-4, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8
    ):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.m: Dict[str, np.ndarray] = {}
        self.v: Dict[str, np.ndarray] = {}
        self.t = 0

    def step(self, params: Dict[str, np.ndarray], grads: Dict[str, np.ndarray]) -> None:
        self.t += 1
        bc1 = 1.0 - self.beta1**self.t
        bc2 = 1.0 - self.beta2**self.t
        step_size = self.lr / bc1

        for name in params:
            g = grads[name]
            if name not in self.m:
                self.m[name] = np.zeros_like(params[name])
                self.v[name] = np.zeros_like(params[name])
            self.m[name] *= self.beta1
            self.m[name] += (1.0 - self.beta1) * g
            self.v[name] *= self.beta2
            self.v[name] += (1.0 - self.beta2) * (g * g)
            denom = np.sqrt(self.v[name] / bc2) + self.epsilon
            params[name] -= step_size * self.m[name] / denom


@dataclass(eq=False)
class QNetworkParams:
    """
    Weights, biases and optimizer state of the Q-network.

    ``arrays`` holds ``w0, b0, w1, b1, ...``; ``w{i}`` has shape
    (inputs, outputs) of layer i.
    """
    arrays: Dict[str, np.ndarray]
    optimizer: Adam

    @property
    def layer_count(self) -> int:
        return len(self.arrays) // 2

    @property
    def layer_sizes(self) -> Tuple[int, ...]:
        sizes = [self.arrays["w0"].shape[0]]
        sizes += [self.arrays[f"w{i}"].shape[1] for i in range(self.layer_count)]
        return tuple(sizes)

    def names(self) -> Tuple[str, ...]:
        return tuple(f"{kind}{i}" for i in range(self.layer_count) for kind in ("w", "b"))

    def copy(self) -> "QNetworkParams":
        return QNetworkParams(
            arrays={name: value.copy() for name, value in self.arrays.items()},
            optimizer=copy.deepcopy(self.optimizer),
        )

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(value)) for value in self.arrays.values())


def init_params(
    rng: np.random.Generator,
    layer_sizes: Sequence[int] = DEFAULT_LAYER_SIZES,
    adam_lr: float = 1e-4,
) -> QNetworkParams:
    """Uniform initialisation in +-1/sqrt(fan_in) for weights and biases."""
    arrays = {}
    for i, (fan_in, fan_out) in enumerate(zip(layer_sizes[:-1], layer_sizes[1:])):
        limit = 1.0 / np.sqrt(fan_in)
        arrays[f"w{i}"] = rng.uniform(-limit, limit, size=(fan_in, fan_out))
        arrays[f"b{i}"] = rng.uniform(-limit, limit, size=fan_out)
    return QNetworkParams(arrays=arrays, optimizer=Adam(lr=adam_lr))


def _forward(params: QNetworkParams, states: np.ndarray):
    activations = [states]
    pre_activations = []
    x = states
    last = params.layer_count - 1
    for i in range(params.layer_count):
        z = x @ params.arrays[f"w{i}"] + params.arrays[f"b{i}"]
        pre_activations.append(z)
        x = z if i == last else np.maximum(z, 0.0)
        activations.append(x)
    return activations, pre_activations


def q_forward(params: QNetworkParams, states: np.ndarray) -> np.ndarray:
    """Action values for one state (15,) or a batch (B, 15)."""
    states = np.asarray(states, dtype=float)
    activations, _ = _forward(params, np.atleast_2d(states))
    out = activations[-1]
    return out[0] if states.ndim == 1 else out


def loss_and_gradients(
    params: QNetworkParams,
    states: np.ndarray,
    actions: np.ndarray,
    targets: np.ndarray,
) -> Tuple[float, Dict[str, np.ndarray]]:
    """
    Mean squared error between Q(s, a) and the targets, with its gradient
    with respect to every weight and bias.
    """
    actions = np.asarray(actions, dtype=int)
    activations, pre_activations = _forward(params, np.asarray(states, dtype=float))
    q = activations[-1]
    rows = np.arange(len(actions))
    diff = q[rows, actions] - targets
    loss = float(np.mean(diff**2))

    delta = np.zeros_like(q)
    delta[rows, actions] = 2.0 * diff / len(actions)
    grads = {}
    for i in reversed(range(params.layer_count)):
        grads[f"w{i}"] = activations[i].T @ delta
        grads[f"b{i}"] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ params.arrays[f"w{i}"].T) * (pre_activations[i - 1] > 0.0)
    return loss, grads
