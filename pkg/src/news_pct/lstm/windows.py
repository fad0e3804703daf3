from collections import defaultdict

import numpy as np
from pydantic import BaseModel

from news_pct.data.record import Dataset
from news_pct.utils.errors import ShapeError, UsageError


class WindowExample(BaseModel):
    """`inputs` are the k percent changes of `ticker` preceding the record at `record_ref`."""

    model_config = {"frozen": True}

    inputs: tuple[float, ...]
    target: float
    record_ref: int
    ticker: str


def build_windows(dataset: Dataset, k: int) -> list[WindowExample]:
    """Sliding windows per ticker, tickers in order of first appearance.

    Each ticker's records are taken in date order (ties keep file order), so
    windows never mix tickers and never look ahead.
    """
    if k < 1:
        raise UsageError(f"window must be at least 1, got {k}")
    by_ticker: dict[str, list[int]] = defaultdict(list)
    for i, record in enumerate(dataset.records):
        by_ticker[record.ticker].append(i)

    windows = []
    for ticker, refs in by_ticker.items():
        refs.sort(key=lambda i: dataset.records[i].date)
        series = [dataset.records[i].pct_change for i in refs]
        for end in range(k, len(series)):
            windows.append(
                WindowExample(inputs=tuple(series[end - k : end]), target=series[end], record_ref=refs[end], ticker=ticker)
            )
    return windows


def stack_windows(windows: list[WindowExample]) -> tuple[np.ndarray, np.ndarray]:
    """(inputs [batch, k], targets [batch]) as float64."""
    if not windows:
        raise UsageError("no windows to stack")
    lengths = {len(w.inputs) for w in windows}
    if len(lengths) != 1:
        raise ShapeError(f"windows have mixed lengths {sorted(lengths)}")
    return (
        np.array([w.inputs for w in windows], dtype=np.float64),
        np.array([w.target for w in windows], dtype=np.float64),
    )
