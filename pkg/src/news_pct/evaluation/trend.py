from datetime import date as Date
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, model_validator

from news_pct.evaluation.report import PredictionRecord


class TrendSeries(BaseModel):
    """Running sums of predicted and actual percent changes over the test period."""

    model_config = {"frozen": True}

    dates: list[Date]
    cum_predicted: list[float]
    cum_actual: list[float]
    pearson_r: float | None = None

    @model_validator(mode="after")
    def validate_lengths(self) -> "TrendSeries":
        if not len(self.dates) == len(self.cum_predicted) == len(self.cum_actual):
            raise ValueError("dates and cumulative series must have equal lengths")
        return self


def pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    """Correlation coefficient, or None when undefined (< 2 points or a constant series)."""
    if x.size < 2:
        return None
    dx, dy = x - x.mean(), y - y.mean()
    denom = np.sqrt(np.dot(dx, dx) * np.dot(dy, dy))
    if denom == 0.0:
        return None
    return float(np.clip(np.dot(dx, dy) / denom, -1.0, 1.0))


def trend_report(per_example: Sequence[PredictionRecord]) -> TrendSeries:
    ordered = sorted(per_example, key=lambda r: (r.date, r.record_ref))
    cum_predicted = np.cumsum([r.prediction for r in ordered], dtype=np.float64)
    cum_actual = np.cumsum([r.actual for r in ordered], dtype=np.float64)
    return TrendSeries(
        dates=[r.date for r in ordered],
        cum_predicted=cum_predicted.tolist(),
        cum_actual=cum_actual.tolist(),
        pearson_r=pearson(cum_predicted, cum_actual),
    )
