# curvant/harness/__init__.py
"""
Experiment harness: training, transfer runs, checkpoints and result files.
"""

from curvant.harness.checkpoint import (
    Checkpoint,
    load_checkpoint,
    network_fingerprint,
    save_checkpoint,
)
from curvant.harness.metrics_io import (
    attempts_curve,
    read_metrics_csv,
    write_metrics_csv,
)
from curvant.harness.training import (
    TrainingResult,
    TransferComparison,
    TransferResult,
    compare_transfer,
    train,
    transfer_run,
)

__all__ = [
    "Checkpoint",
    "load_checkpoint",
    "network_fingerprint",
    "save_checkpoint",
    "attempts_curve",
    "read_metrics_csv",
    "write_metrics_csv",
    "TrainingResult",
    "TransferComparison",
    "TransferResult",
    "compare_transfer",
    "train",
    "transfer_run",
]
