from math import isfinite, isclose
from datetime import date as Date
from typing import Literal
from re import compile as re_compile
from collections.abc import Iterable

from pydantic import BaseModel, Field, field_validator, model_validator

from news_pct.utils.errors import DomainError
from news_pct.constants import PCT_RECORD_REL_TOL

ISO_DATE_PATTERN = re_compile(r"^\d{4}-\d{2}-\d{2}$")
TICKER_PATTERN = re_compile(r"^[^,\r\n]*\S[^,\r\n]*$")


def compute_pct_change(open_price: float, close_price: float) -> float:
    """Percent change from open to close on the ×100 scale.

    Args:
        open_price: Price at market open, must be > 0.
        close_price: Price at market close, must be > 0.

    Returns:
        float: (close - open) / open × 100.
    """
    if not (isfinite(open_price) and open_price > 0):
        raise DomainError(f"open_price must be a positive finite amount, got {open_price}")
    if not (isfinite(close_price) and close_price > 0):
        raise DomainError(f"close_price must be a positive finite amount, got {close_price}")
    return (close_price - open_price) * 100.0 / open_price


def parse_iso_date(value: object) -> Date:
    if isinstance(value, Date):
        return value
    if not isinstance(value, str) or not ISO_DATE_PATTERN.match(value):
        raise ValueError(f"Invalid ISO-8601 calendar date: {value!r}")
    return Date.fromisoformat(value)


class NewsRecord(BaseModel):
    """One headline observation with its open/close prices."""

    model_config = {"frozen": True}

    date: Date
    ticker: str = Field(..., pattern=TICKER_PATTERN.pattern)
    company: str = Field(..., min_length=1)
    headline: str = Field(..., min_length=1)
    source: str = Field(..., min_length=1)
    open_price: float = Field(..., gt=0, allow_inf_nan=False)
    close_price: float = Field(..., gt=0, allow_inf_nan=False)
    pct_change: float = Field(..., allow_inf_nan=False)

    @field_validator("date", mode="before")
    def validate_date_format(cls, value: object) -> Date:
        return parse_iso_date(value)

    @field_validator("headline")
    def validate_headline_nonblank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("headline must not be blank")
        return value

    @model_validator(mode="after")
    def validate_pct_change(self) -> "NewsRecord":
        expected = compute_pct_change(self.open_price, self.close_price)
        if not isclose(self.pct_change, expected, rel_tol=PCT_RECORD_REL_TOL, abs_tol=1e-12):
            raise ValueError(f"pct_change {self.pct_change} does not match prices (expected {expected})")
        return self

    @classmethod
    def from_prices(cls, **fields: object) -> "NewsRecord":
        """Build a record whose pct_change is computed from its prices."""
        pct = compute_pct_change(float(fields["open_price"]), float(fields["close_price"]))  # type: ignore[arg-type]
        return cls.model_validate({**fields, "pct_change": pct})


class Dataset(BaseModel):
    model_config = {"frozen": True}

    records: tuple[NewsRecord, ...] = ()
    provenance: Literal["real", "synthetic"] = "real"

    def __len__(self) -> int:
        return len(self.records)

    def subset(self, indices: Iterable[int]) -> "Dataset":
        return Dataset(records=tuple(self.records[i] for i in indices), provenance=self.provenance)

    @property
    def tickers(self) -> list[str]:
        return sorted({r.ticker for r in self.records})


def filter_tickers(dataset: Dataset, tickers: Iterable[str]) -> Dataset:
    """Restrict a dataset to a sector group such as the technology subset."""
    wanted = {t.upper() for t in tickers}
    return dataset.subset(i for i, r in enumerate(dataset.records) if r.ticker.upper() in wanted)
