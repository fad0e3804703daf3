from math import isfinite
from pathlib import Path
from logging import getLogger
from dataclasses import dataclass
from collections.abc import Callable, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from news_pct.__main__ import is_verbose
from news_pct.numerics.rng import Rng
from news_pct.model.config import ModelConfig
from news_pct.model.encoder import backward
from news_pct.model.params import Parameters, init_params
from news_pct.modality.compose import TrainingExample
from news_pct.tokenizer.vocab import Vocabulary
from news_pct.tokenizer.wordpiece import encode_batch
from news_pct.training.adam import AdamState, adam_step
from news_pct.training.config import TrainConfig
from news_pct.utils.errors import ShapeError, UsageError, TrainingDivergedError

LOGGER = getLogger(__name__)

type GradFn = Callable[[dict[str, np.ndarray], np.ndarray, Rng], tuple[dict[str, np.ndarray], float]]


@dataclass
class TrainResult:
    params: Parameters
    loss_history: list[float]
    steps: int


def batch_order(n: int, epoch_rng: Rng, config: TrainConfig) -> list[np.ndarray]:
    order = epoch_rng.permutation(n) if config.shuffle_each_epoch else np.arange(n)
    return [order[i : i + config.batch_size] for i in range(0, n, config.batch_size)]


def run_adam(
    initial: dict[str, np.ndarray],
    n_examples: int,
    grad_fn: GradFn,
    config: TrainConfig,
    label: str,
) -> tuple[dict[str, np.ndarray], list[float], int]:
    """Shared mini-batch Adam loop for both architectures.

    `grad_fn(params, batch_indices, dropout_rng)` returns (grads, batch loss).
    Every draw comes from named sub-streams of `config.seed`, so reruns are bit-identical.
    """
    root = Rng(config.seed, label)
    shuffle_rng = root.child("shuffle")
    dropout_rng = root.child("dropout")

    params = dict(initial)
    state = AdamState.fresh(params)
    history: list[float] = []

    epochs = tqdm(range(config.epochs), desc=f"train {label}", disable=not is_verbose())
    for epoch in epochs:
        total = 0.0
        for b, idx in enumerate(batch_order(n_examples, shuffle_rng, config)):
            grads, loss = grad_fn(params, idx, dropout_rng)
            if not isfinite(loss):
                raise TrainingDivergedError(epoch, b, loss)
            params, state = adam_step(params, grads, state, config)
            total += loss * len(idx)
        mean_loss = total / n_examples
        history.append(mean_loss)
        epochs.set_postfix(loss=f"{mean_loss:.5f}")
        LOGGER.debug(f"{label} epoch {epoch + 1}/{config.epochs}: mean loss {mean_loss:.6f}")

    return params, history, state.t


def train(
    examples: Sequence[TrainingExample],
    vocab: Vocabulary,
    model_config: ModelConfig,
    train_config: TrainConfig,
) -> tuple[Parameters, list[float]]:
    """Fit the encoder to the examples' targets with MSE loss and Adam.

    Returns:
        (parameters, mean training loss per epoch)
    """
    result = train_model(examples, vocab, model_config, train_config)
    return result.params, result.loss_history


def train_model(
    examples: Sequence[TrainingExample],
    vocab: Vocabulary,
    model_config: ModelConfig,
    train_config: TrainConfig,
) -> TrainResult:
    if not examples:
        raise UsageError("cannot train on an empty example set")
    if len(vocab) > model_config.vocab_size:
        raise ShapeError(f"vocabulary has {len(vocab)} tokens but the model embeds only {model_config.vocab_size}")

    ids, mask = encode_batch([e.input_text for e in examples], vocab, model_config.max_len)
    targets = np.array([e.target for e in examples], dtype=np.dtype(model_config.precision))
    initial = init_params(model_config, Rng(train_config.seed, "init"))

    def grad_fn(params: dict[str, np.ndarray], idx: np.ndarray, rng: Rng) -> tuple[dict[str, np.ndarray], float]:
        return backward((ids[idx], mask[idx]), targets[idx], Parameters(params), model_config, rng, training=True)

    LOGGER.info(
        f"Training encoder on {len(examples)} examples for {train_config.epochs} epochs "
        f"({initial.count()} parameters, batch {train_config.batch_size}, lr {train_config.learning_rate})"
    )
    tensors, history, steps = run_adam(initial.tensors, len(examples), grad_fn, train_config, "bert")
    if history:
        LOGGER.info(f"Final mean training loss {history[-1]:.6f}")
    return TrainResult(params=Parameters(tensors), loss_history=history, steps=steps)


def save_loss_history(history: Sequence[float], path: str | Path) -> Path:
    """CSV with columns epoch (1-based) and mean_loss."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"epoch": range(1, len(history) + 1), "mean_loss": [repr(float(x)) for x in history]})
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
