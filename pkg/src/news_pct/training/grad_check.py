"""
Finite-difference verification of hand-written gradients.

Every scalar of every tensor is nudged by ±FD_STEP and the central difference
of the loss is compared to the analytic gradient.
"""

from logging import getLogger
from collections.abc import Callable, Mapping

import numpy as np
from pydantic import BaseModel, Field

from news_pct.constants import (
    CLS_ID,
    PAD_ID,
    SEP_ID,
    FD_STEP,
    GRAD_CHECK_THRESHOLD,
    GRAD_CHECK_DENOM_FLOOR,
    RESERVED_TOKENS,
)
from news_pct.numerics.rng import Rng
from news_pct.model.config import ModelConfig
from news_pct.model.encoder import backward, forward
from news_pct.model.params import Parameters, init_params
from news_pct.training.loss import mse

LOGGER = getLogger(__name__)

type LossFn = Callable[[dict[str, np.ndarray]], float]

GRAD_CHECK_SEED = 1234
MICRO_MODEL_CONFIG = ModelConfig(
    vocab_size=50,
    hidden_dim=8,
    num_layers=1,
    num_heads=1,
    ff_dim=16,
    max_len=6,
    dropout_p=0.0,
    init_stddev=0.2,
)


class GradCheckReport(BaseModel):
    per_tensor: dict[str, float]
    max_error: float = Field(ge=0.0)
    worst_tensor: str
    threshold: float = GRAD_CHECK_THRESHOLD

    @property
    def passed(self) -> bool:
        return self.max_error <= self.threshold

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict}: max relative error {self.max_error:.3e} in '{self.worst_tensor}' ({len(self.per_tensor)} tensors)"


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> np.ndarray:
    """|a − n| / max(|a| + |n|, floor), elementwise."""
    return np.abs(analytic - numeric) / np.maximum(np.abs(analytic) + np.abs(numeric), GRAD_CHECK_DENOM_FLOOR)


def numeric_gradients(loss_fn: LossFn, tensors: Mapping[str, np.ndarray], step: float = FD_STEP) -> dict[str, np.ndarray]:
    """Central differences of `loss_fn` with respect to every entry of every tensor."""
    work = {name: t.astype(np.float64, copy=True) for name, t in tensors.items()}
    grads: dict[str, np.ndarray] = {}
    for name, tensor in work.items():
        g = np.zeros_like(tensor)
        flat = tensor.reshape(-1)
        for i in range(flat.size):
            saved = flat[i]
            flat[i] = saved + step
            up = loss_fn(work)
            flat[i] = saved - step
            down = loss_fn(work)
            flat[i] = saved
            g.reshape(-1)[i] = (up - down) / (2.0 * step)
        grads[name] = g
    return grads


def compare_gradients(
    analytic: Mapping[str, np.ndarray], numeric: Mapping[str, np.ndarray], threshold: float = GRAD_CHECK_THRESHOLD
) -> GradCheckReport:
    per_tensor = {name: float(relative_error(analytic[name], numeric[name]).max(initial=0.0)) for name in numeric}
    worst = max(per_tensor, key=lambda k: per_tensor[k])
    return GradCheckReport(per_tensor=per_tensor, max_error=per_tensor[worst], worst_tensor=worst, threshold=threshold)


def micro_batch(config: ModelConfig, rng: Rng) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Two sequences: one filling max_len, one padded after two content tokens."""
    first_content = len(RESERVED_TOKENS)
    ids = np.full((2, config.max_len), PAD_ID, dtype=np.int64)
    mask = np.zeros((2, config.max_len), dtype=np.int64)
    for row, length in enumerate((config.max_len, min(4, config.max_len))):
        ids[row, 0] = CLS_ID
        ids[row, 1 : length - 1] = rng.integers(first_content, config.vocab_size, length - 2)
        ids[row, length - 1] = SEP_ID
        mask[row, :length] = 1
    targets = rng.normal(0.0, 1.0, 2)
    return ids, mask, targets


def grad_check(model_config: ModelConfig = MICRO_MODEL_CONFIG, seed: int = GRAD_CHECK_SEED) -> GradCheckReport:
    """Check the encoder's analytic gradients against central finite differences.

    The check runs in float64 with dropout off on a fixed seeded batch of two,
    so reruns give identical reports.
    """
    config = model_config.model_copy(update={"precision": "float64", "dropout_p": 0.0})
    rng = Rng(seed, "grad_check")
    params = init_params(config, rng.child("init"))
    ids, mask, targets = micro_batch(config, rng.child("batch"))

    analytic, _ = backward((ids, mask), targets, params, config, training=False)

    def loss_fn(tensors: dict[str, np.ndarray]) -> float:
        return mse(forward((ids, mask), Parameters(tensors), config), targets)

    report = compare_gradients(analytic, numeric_gradients(loss_fn, params.tensors))
    LOGGER.info(f"Encoder gradient check: {report.summary()}")
    return report
