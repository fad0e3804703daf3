from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, model_validator

from news_pct.utils.errors import ShapeError


class LossInput(BaseModel):
    predictions: list[float]
    targets: list[float]

    @model_validator(mode="after")
    def validate_lengths(self) -> "LossInput":
        if len(self.predictions) != len(self.targets):
            raise ValueError(f"{len(self.predictions)} predictions for {len(self.targets)} targets")
        if not self.predictions:
            raise ValueError("loss needs at least one prediction")
        return self

    @property
    def n(self) -> int:
        return len(self.predictions)


def mse(predictions: Sequence[float] | np.ndarray, targets: Sequence[float] | np.ndarray) -> float:
    """(1/n) Σ (ŷ_i − y_i)²"""
    p = np.asarray(predictions, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    if p.shape != y.shape:
        raise ShapeError(f"predictions {p.shape} and targets {y.shape} differ in length")
    if p.size == 0:
        raise ShapeError("loss needs at least one prediction")
    r = p - y
    return float(np.mean(r * r))


def mse_loss(loss_input: LossInput) -> float:
    return mse(loss_input.predictions, loss_input.targets)
