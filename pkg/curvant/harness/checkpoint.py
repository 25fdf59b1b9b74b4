# curvant/harness/checkpoint.py
"""
Checkpoint files.

Layout (all integers little-endian):

    magic        8 bytes   b"CURVCKPT"
    version      uint32
    header_len   uint32
    header       header_len bytes of UTF-8 JSON (sorted keys)
    payload      float64 values, little-endian
    checksum     32 bytes, SHA-256 of everything before it

The header lists the array names and shapes in payload order, the ADAM
scalars, the generator state, the network fingerprint, the simulation
counter and the RL hyperparameters. The payload holds the network arrays,
then the ADAM moments (when the optimizer has stepped), then the replay
buffer rows (when stored).
"""

import hashlib
import json
import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from curvant.exceptions import CheckpointError
from curvant.rl.network import Adam, QNetworkParams
from curvant.rl.replay import ReplayBuffer

logger = logging.getLogger(__name__)

MAGIC = b"CURVCKPT"
VERSION = 1
_PREFIX = struct.Struct("<8sII")
_DIGEST_SIZE = hashlib.sha256().digest_size
_REPLAY_FIELDS = ("states", "actions", "rewards", "next_states", "dones")


def network_fingerprint(layer_sizes: Sequence[int]) -> str:
    """Identifier of a network shape, e.g. ``mlp-15x100x100x11``."""
    return "mlp-" + "x".join(str(int(size)) for size in layer_sizes)


@dataclass(eq=False)
class Checkpoint:
    """
    Learner state needed to resume or transfer training.

    Attributes:
        params: Network weights with their ADAM state.
        rng_state: ``bit_generator.state`` of the training generator.
        fingerprint: Network shape identifier, see ``network_fingerprint``.
        simulations: Simulator calls spent when the checkpoint was taken.
        hyperparameters: RL settings the network was trained with.
        replay: Replay buffer, when stored.
    """
    params: QNetworkParams
    rng_state: Dict[str, Any]
    fingerprint: str
    simulations: int = 0
    hyperparameters: Dict[str, Any] = field(default_factory=dict)
    replay: Optional[ReplayBuffer] = None


def _collect(ckpt: Checkpoint) -> Tuple[Dict[str, Any], List[np.ndarray]]:
    params = ckpt.params
    optimizer = params.optimizer
    arrays: List[Tuple[str, np.ndarray]] = [(name, params.arrays[name]) for name in params.names()]
    has_moments = bool(optimizer.m)
    if has_moments:
        arrays += [(f"adam_m/{name}", optimizer.m[name]) for name in params.names()]
        arrays += [(f"adam_v/{name}", optimizer.v[name]) for name in params.names()]

    replay = None
    if ckpt.replay is not None:
        buffer = ckpt.replay
        size = len(buffer)
        replay = {
            "capacity": buffer.capacity,
            "position": buffer.position,
            "size": size,
            "state_size": int(buffer.states.shape[1]),
        }
        for name in _REPLAY_FIELDS:
            arrays.append((f"replay/{name}", getattr(buffer, name)[:size]))

    header = {
        "arrays": [[name, list(value.shape)] for name, value in arrays],
        "adam": {
            "lr": optimizer.lr,
            "beta1": optimizer.beta1,
            "beta2": optimizer.beta2,
            "epsilon": optimizer.epsilon,
            "t": optimizer.t,
            "has_moments": has_moments,
        },
        "fingerprint": ckpt.fingerprint,
        "hyperparameters": ckpt.hyperparameters,
        "layer_sizes": list(params.layer_sizes),
        "replay": replay,
        "rng_state": ckpt.rng_state,
        "simulations": ckpt.simulations,
    }
    return header, [np.asarray(value, dtype="<f8") for _, value in arrays]


def checkpoint_bytes(ckpt: Checkpoint) -> bytes:
    """Serialise a checkpoint; identical checkpoints give identical bytes."""
    header, arrays = _collect(ckpt)
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    payload = b"".join(np.ascontiguousarray(a).tobytes() for a in arrays)
    body = _PREFIX.pack(MAGIC, VERSION, len(header_bytes)) + header_bytes + payload
    return body + hashlib.sha256(body).digest()


def save_checkpoint(ckpt: Checkpoint, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(checkpoint_bytes(ckpt))
    logger.info(f"Saved checkpoint {path} ({ckpt.fingerprint}, {ckpt.simulations} simulations)")
    return path


def parse_checkpoint(data: bytes) -> Checkpoint:
    """
    Rebuild a checkpoint from its serialised form.

    Raises:
        CheckpointError: On bad magic, unknown version, truncation, checksum
            mismatch or an inconsistent header.
    """
    if len(data) < _PREFIX.size + _DIGEST_SIZE:
        raise CheckpointError("Checkpoint is truncated")
    magic, version, header_len = _PREFIX.unpack_from(data)
    if magic != MAGIC:
        raise CheckpointError("Not a curvant checkpoint (bad magic bytes)")
    if version != VERSION:
        raise CheckpointError(f"Unsupported checkpoint version {version}")
    body, digest = data[:-_DIGEST_SIZE], data[-_DIGEST_SIZE:]
    if hashlib.sha256(body).digest() != digest:
        raise CheckpointError("Checkpoint checksum mismatch (corrupt or truncated file)")

    try:
        header = json.loads(body[_PREFIX.size:_PREFIX.size + header_len].decode("utf-8"))
        payload = np.frombuffer(body[_PREFIX.size + header_len:], dtype="<f8")
        arrays: Dict[str, np.ndarray] = {}
        offset = 0
        for name, shape in header["arrays"]:
            count = int(np.prod(shape)) if shape else 1
            arrays[name] = payload[offset:offset + count].reshape(shape).astype(float)
            offset += count
        if offset != payload.size:
            raise ValueError(f"payload holds {payload.size} values, header lists {offset}")

        adam = header["adam"]
        optimizer = Adam(
            lr=adam["lr"], beta1=adam["beta1"], beta2=adam["beta2"], epsilon=adam["epsilon"]
        )
        optimizer.t = adam["t"]
        sizes = header["layer_sizes"]
        names = [f"{kind}{i}" for i in range(len(sizes) - 1) for kind in ("w", "b")]
        params = QNetworkParams(arrays={name: arrays[name] for name in names}, optimizer=optimizer)
        if adam["has_moments"]:
            optimizer.m = {name: arrays[f"adam_m/{name}"] for name in names}
            optimizer.v = {name: arrays[f"adam_v/{name}"] for name in names}

        replay = None
        if header["replay"] is not None:
            info = header["replay"]
            replay = ReplayBuffer(info["capacity"], info["state_size"])
            size = info["size"]
            replay.states[:size] = arrays["replay/states"]
            replay.actions[:size] = arrays["replay/actions"].astype(np.int64)
            replay.rewards[:size] = arrays["replay/rewards"]
            replay.next_states[:size] = arrays["replay/next_states"]
            replay.dones[:size] = arrays["replay/dones"].astype(bool)
            replay.position = info["position"]
            replay.size = size
    except (KeyError, ValueError, TypeError) as exc:
        raise CheckpointError(f"Malformed checkpoint header: {exc}") from exc

    return Checkpoint(
        params=params,
        rng_state=header["rng_state"],
        fingerprint=header["fingerprint"],
        simulations=header["simulations"],
        hyperparameters=header["hyperparameters"],
        replay=replay,
    )


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    """
    Read a checkpoint file.

    Raises:
        CheckpointError: If the file is missing or fails validation.
    """
    path = Path(path)
    if not path.is_file():
        raise CheckpointError(f"Checkpoint not found: {path}")
    ckpt = parse_checkpoint(path.read_bytes())
    logger.info(f"Loaded checkpoint {path} ({ckpt.fingerprint})")
    return ckpt
