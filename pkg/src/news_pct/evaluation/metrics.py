from math import isfinite
from typing import Literal
from collections.abc import Sequence

import numpy as np

from news_pct.constants import WITHIN_TOLERANCES
from news_pct.training.loss import mse
from news_pct.utils.errors import ShapeError, UsageError, SymbolicModeError

type Values = Sequence[float] | np.ndarray


def direction(values: np.ndarray) -> np.ndarray:
    """+1 / −1 per entry; zero counts as +1, the same tie-break symbolic targets use."""
    return np.where(values >= 0, 1, -1)


def _paired(preds: Values, actuals: Values) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(preds, dtype=np.float64)
    a = np.asarray(actuals, dtype=np.float64)
    if p.ndim != 1 or p.shape != a.shape:
        raise ShapeError(f"predictions {p.shape} and actuals {a.shape} must be equal-length sequences")
    if p.size == 0:
        raise ShapeError("metrics need at least one prediction")
    return p, a


def direction_accuracy(preds: Values, actuals: Values) -> float:
    p, a = _paired(preds, actuals)
    return float(np.count_nonzero(direction(p) == direction(a)) / p.size)


def within_tolerance_directional(
    preds: Values,
    actuals: Values,
    tolerance: float,
    target_mode: Literal["regression", "symbolic"] = "regression",
) -> float:
    """Share of predictions with the right direction AND at most `tolerance` percentage points off."""
    if target_mode == "symbolic":
        raise SymbolicModeError("within-tolerance accuracy is undefined for a model trained on ±1 targets")
    if not (isfinite(tolerance) and tolerance >= 0):
        raise UsageError(f"tolerance must be a non-negative number of percentage points, got {tolerance}")
    p, a = _paired(preds, actuals)
    hit = (direction(p) == direction(a)) & (np.abs(p - a) <= tolerance)
    return float(np.count_nonzero(hit) / p.size)


def within_metrics(preds: Values, actuals: Values) -> dict[float, float]:
    return {tol: within_tolerance_directional(preds, actuals, tol) for tol in WITHIN_TOLERANCES}


def test_mse(preds: Values, actuals: Values) -> float:
    return mse(*_paired(preds, actuals))


# not a pytest test function
test_mse.__test__ = False  # type: ignore[attr-defined]
