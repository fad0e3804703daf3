from math import isfinite
from typing import Literal

from pydantic import BaseModel

from news_pct.data.record import Dataset, NewsRecord
from news_pct.modality.versions import ModalityVersion
from news_pct.constants import FIELD_DELIMITER
from news_pct.utils.errors import DomainError


class TrainingExample(BaseModel):
    model_config = {"frozen": True}

    input_text: str
    target: float
    record_ref: int


def compose_input(record: NewsRecord, version: ModalityVersion) -> str:
    """Serialize the version's fields in the order headline, source, company, date."""
    parts = [record.headline]
    if version.include_source:
        parts.append(record.source)
    if version.include_company:
        parts.append(record.company)
    if version.include_date:
        parts.append(record.date.isoformat())
    return FIELD_DELIMITER.join(parts)


def make_target(pct_change: float, mode: Literal["regression", "symbolic"]) -> float:
    """Regression keeps the percent change; symbolic keeps its sign, with 0 counted as +1."""
    if not isfinite(pct_change):
        raise DomainError(f"pct_change must be finite, got {pct_change}")
    if mode == "regression":
        return float(pct_change)
    if mode == "symbolic":
        return 1.0 if pct_change >= 0 else -1.0
    raise DomainError(f"unknown target mode {mode!r}")


def build_examples(dataset: Dataset, version: ModalityVersion) -> list[TrainingExample]:
    return [
        TrainingExample(
            input_text=compose_input(record, version),
            target=make_target(record.pct_change, version.target_mode),
            record_ref=i,
        )
        for i, record in enumerate(dataset.records)
    ]
