from math import isfinite
from pathlib import Path
from logging import getLogger
from typing import Literal
from datetime import date as Date

import pandas as pd
from pydantic import BaseModel, ValidationError

from news_pct.data.record import Dataset, NewsRecord, compute_pct_change, parse_iso_date
from news_pct.utils.errors import DatasetFormatError, PctMismatchError, PriceDomainError
from news_pct.constants import DATASET_COLUMNS, PCT_FILE_ABS_TOL

LOGGER = getLogger(__name__)

# CSV column -> NewsRecord field
COLUMN_TO_FIELD = {
    "date": "date",
    "ticker": "ticker",
    "company": "company",
    "headline": "headline",
    "source": "source",
    "open": "open_price",
    "close": "close_price",
    "pct_change": "pct_change",
}


class DatasetMeta(BaseModel):
    """Sidecar written next to a dataset CSV; the CSV schema has no room for it."""

    provenance: Literal["real", "synthetic"] = "real"


def meta_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".meta.json")


class RowIssue(BaseModel):
    row: int
    field: str | None
    message: str


class ValidationReport(BaseModel):
    path: str
    n_records: int
    n_tickers: int
    first_date: Date | None
    last_date: Date | None
    issues: list[RowIssue]

    @property
    def ok(self) -> bool:
        return not self.issues


def _read_frame(path: str | Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as e:
        raise DatasetFormatError(f"{path} has no header row") from e
    except pd.errors.ParserError as e:
        raise DatasetFormatError(f"{path} is not a well-formed CSV: {e}") from e

    if tuple(frame.columns) != DATASET_COLUMNS:
        raise DatasetFormatError(f"expected header {','.join(DATASET_COLUMNS)}, got {','.join(map(str, frame.columns))}")
    return frame


def _parse_decimal(raw: str, row: int, column: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise DatasetFormatError(f"not a decimal number: {raw!r}", row=row, field=column) from None
    if not isfinite(value):
        raise DatasetFormatError(f"not a finite number: {raw!r}", row=row, field=column)
    return value


def parse_row(values: dict[str, str], row: int) -> NewsRecord:
    """Convert one CSV row into a NewsRecord, recomputing pct_change from the prices.

    Args:
        values: Column name to raw cell text.
        row: 1-based record number, used in error messages.

    Raises:
        DatasetFormatError: a cell is missing or malformed.
        PriceDomainError: a price is not positive (also a DomainError).
        PctMismatchError: the stored pct_change disagrees with the prices.
    """
    for column in DATASET_COLUMNS:
        raw = values.get(column)
        if not isinstance(raw, str) or raw == "":
            raise DatasetFormatError("missing value", row=row, field=column)

    try:
        record_date = parse_iso_date(values["date"])
    except ValueError as e:
        raise DatasetFormatError(str(e), row=row, field="date") from None

    open_price = _parse_decimal(values["open"], row, "open")
    close_price = _parse_decimal(values["close"], row, "close")
    stored_pct = _parse_decimal(values["pct_change"], row, "pct_change")

    for column, price in (("open", open_price), ("close", close_price)):
        if price <= 0:
            raise PriceDomainError(f"price must be > 0, got {price}", row=row, field=column)
    pct = compute_pct_change(open_price, close_price)

    if abs(pct - stored_pct) > PCT_FILE_ABS_TOL:
        raise PctMismatchError(f"stored {stored_pct} but prices give {pct}", row=row, field="pct_change")

    try:
        return NewsRecord(
            date=record_date,
            ticker=values["ticker"],
            company=values["company"],
            headline=values["headline"],
            source=values["source"],
            open_price=open_price,
            close_price=close_price,
            pct_change=pct,
        )
    except ValidationError as e:
        err = e.errors()[0]
        field = str(err["loc"][0]) if err["loc"] else None
        column = next((c for c, f in COLUMN_TO_FIELD.items() if f == field), field)
        raise DatasetFormatError(err["msg"], row=row, field=column) from None


def load_dataset(path: str | Path, provenance: str | None = None) -> Dataset:
    """Load a dataset CSV, validating every row.

    Args:
        path: CSV file following the `date,ticker,company,headline,source,open,close,pct_change` schema.
        provenance: Tag stored on the Dataset ("real" or "synthetic"). Defaults to the
            sidecar written by save_dataset, or "real" for files without one.

    Returns:
        Dataset: records in file order.
    """
    frame = _read_frame(path)
    records = [parse_row(values, i + 1) for i, values in enumerate(frame.to_dict(orient="records"))]
    if provenance is None:
        sidecar = meta_path(path)
        meta = DatasetMeta.model_validate_json(sidecar.read_text(encoding="utf-8")) if sidecar.exists() else DatasetMeta()
        provenance = meta.provenance
    LOGGER.info(f"Loaded {len(records)} {provenance} records from {path}")
    return Dataset(records=tuple(records), provenance=provenance)  # type: ignore[arg-type]


def validate_dataset(path: str | Path) -> ValidationReport:
    """Check every row of a dataset file and collect all violations."""
    issues: list[RowIssue] = []
    records: list[NewsRecord] = []
    try:
        frame = _read_frame(path)
    except DatasetFormatError as e:
        return ValidationReport(
            path=str(path), n_records=0, n_tickers=0, first_date=None, last_date=None,
            issues=[RowIssue(row=0, field=None, message=str(e))],
        )

    for i, values in enumerate(frame.to_dict(orient="records")):
        try:
            records.append(parse_row(values, i + 1))
        except DatasetFormatError as e:
            issues.append(RowIssue(row=i + 1, field=e.field, message=str(e)))

    dates = [r.date for r in records]
    return ValidationReport(
        path=str(path),
        n_records=len(records),
        n_tickers=len({r.ticker for r in records}),
        first_date=min(dates) if dates else None,
        last_date=max(dates) if dates else None,
        issues=issues,
    )


def format_float(value: float) -> str:
    """Shortest text that parses back to the same double."""
    return repr(float(value))


def save_dataset(dataset: Dataset, path: str | Path) -> Path:
    """Write a dataset in the CSV schema; load_dataset(save_dataset(d)) reproduces d."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [
        {
            "date": r.date.isoformat(),
            "ticker": r.ticker,
            "company": r.company,
            "headline": r.headline,
            "source": r.source,
            "open": format_float(r.open_price),
            "close": format_float(r.close_price),
            "pct_change": format_float(r.pct_change),
        }
        for r in dataset.records
    ]
    frame = pd.DataFrame(rows, columns=list(DATASET_COLUMNS))
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    meta_path(path).write_text(DatasetMeta(provenance=dataset.provenance).model_dump_json() + "\n", encoding="utf-8")
    LOGGER.info(f"Wrote {len(rows)} records to {path}")
    return path
