from pathlib import Path
from logging import getLogger
from collections.abc import Sequence

import numpy as np

from news_pct.constants import LSTM_CHECKPOINT_MAGIC
from news_pct.numerics.rng import Rng
from news_pct.data.record import Dataset
from news_pct.model.params import Parameters
from news_pct.training.loop import TrainResult, run_adam
from news_pct.training.checkpoint import read_archive, write_archive, config_mismatch
from news_pct.training.grad_check import GradCheckReport, compare_gradients, numeric_gradients
from news_pct.training.loss import mse
from news_pct.evaluation.report import MetricsReport, evaluate_predictions
from news_pct.lstm.config import LstmConfig
from news_pct.lstm.windows import WindowExample, stack_windows
from news_pct.lstm.cell import init_lstm_params, lstm_backward_batch, lstm_tensor_shapes, run_cells
from news_pct.utils.errors import CheckpointShapeError, CorruptCheckpointError, UsageError

LOGGER = getLogger(__name__)

LSTM_REPORT_VERSION = "lstm"


def train_lstm(windows: Sequence[WindowExample], config: LstmConfig) -> TrainResult:
    """Fit the baseline with the same MSE loss, Adam step and batching as the encoder."""
    if not windows:
        raise UsageError("no training windows; every ticker needs more than `window` records")
    inputs, targets = stack_windows(list(windows))
    if inputs.shape[1] != config.window:
        raise UsageError(f"windows have length {inputs.shape[1]} but the config expects {config.window}")

    initial = init_lstm_params(config, Rng(config.train.seed, "init"))

    def grad_fn(params: dict[str, np.ndarray], idx: np.ndarray, _rng: Rng) -> tuple[dict[str, np.ndarray], float]:
        return lstm_backward_batch(inputs[idx], targets[idx], Parameters(params))

    LOGGER.info(f"Training LSTM baseline on {len(windows)} windows (window {config.window}, hidden {config.hidden_dim})")
    tensors, history, steps = run_adam(initial.tensors, len(windows), grad_fn, config.train, "lstm")
    return TrainResult(params=Parameters(tensors), loss_history=history, steps=steps)


def predict_windows(windows: Sequence[WindowExample], params: Parameters) -> np.ndarray:
    inputs, _ = stack_windows(list(windows))
    return run_cells(inputs, params)[0]


def evaluate_lstm(
    params: Parameters, windows: Sequence[WindowExample], dataset: Dataset, group: str = "general"
) -> MetricsReport:
    """Score the baseline with the encoder's report schema so both can be compared."""
    if not windows:
        raise UsageError("no evaluation windows; every ticker needs more than `window` records")
    preds = predict_windows(windows, params)
    refs = [(w.record_ref, dataset.records[w.record_ref].date, w.target, w.target) for w in windows]
    report = evaluate_predictions(preds, refs, LSTM_REPORT_VERSION, "regression", arch="lstm", group=group)
    LOGGER.info(f"LSTM on {report.n_test} windows: direction {report.direction_accuracy:.4f}, mse {report.test_mse:.4f}")
    return report


def lstm_grad_check(hidden_dim: int = 4, window: int = 3, batch: int = 3, seed: int = 1234) -> GradCheckReport:
    config = LstmConfig(window=window, hidden_dim=hidden_dim)
    rng = Rng(seed, "grad_check/lstm")
    params = init_lstm_params(config, rng.child("init"))
    inputs = rng.normal(0.0, 1.0, (batch, window))
    targets = rng.normal(0.0, 1.0, batch)

    analytic, _ = lstm_backward_batch(inputs, targets, params)

    def loss_fn(tensors: dict[str, np.ndarray]) -> float:
        return mse(run_cells(inputs, Parameters(tensors))[0], targets)

    report = compare_gradients(analytic, numeric_gradients(loss_fn, params.tensors))
    LOGGER.info(f"LSTM gradient check (hidden {hidden_dim}, window {window}): {report.summary()}")
    return report


def save_lstm_checkpoint(params: Parameters, config: LstmConfig, path: str | Path) -> Path:
    if {n: tuple(t.shape) for n, t in params.items()} != lstm_tensor_shapes(config):
        raise CheckpointShapeError("parameters do not match the LSTM configuration they are saved with")
    path = write_archive(path, LSTM_CHECKPOINT_MAGIC, {"config": config.model_dump(mode="json")}, params.tensors)
    LOGGER.info(f"Saved LSTM checkpoint to {path}")
    return path


def load_lstm_checkpoint(path: str | Path, expected_config: LstmConfig | None = None) -> tuple[Parameters, LstmConfig]:
    metadata, tensors = read_archive(path, LSTM_CHECKPOINT_MAGIC)
    try:
        config = LstmConfig.model_validate(metadata["config"])
    except (KeyError, ValueError) as e:
        raise CorruptCheckpointError(f"{path}: invalid checkpoint metadata: {e}") from None
    if expected_config is not None and (
        expected_config.window != config.window or expected_config.hidden_dim != config.hidden_dim
    ):
        diff = "; ".join(config_mismatch(expected_config, config))
        raise CheckpointShapeError(f"{path}: checkpoint was saved with a different LSTM configuration ({diff})")

    shapes = lstm_tensor_shapes(config)
    if {n: tuple(t.shape) for n, t in tensors.items()} != shapes:
        raise CheckpointShapeError(f"{path}: tensor shapes disagree with the stored LSTM configuration")
    return Parameters({name: tensors[name] for name in shapes}), config
