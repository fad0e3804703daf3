from typing import Literal
from logging import getLogger
from datetime import date as Date
from collections.abc import Sequence

import numpy as np
from tqdm import tqdm
from pydantic import BaseModel, Field, model_validator

from news_pct.__main__ import is_verbose
from news_pct.data.record import Dataset
from news_pct.model.config import ModelConfig
from news_pct.model.encoder import predict
from news_pct.model.params import Parameters
from news_pct.modality.compose import build_examples
from news_pct.modality.versions import ModalityVersion
from news_pct.tokenizer.vocab import Vocabulary
from news_pct.tokenizer.wordpiece import encode_batch
from news_pct.utils.errors import ShapeError
from news_pct.evaluation.metrics import test_mse, direction_accuracy, within_tolerance_directional

LOGGER = getLogger(__name__)

EVAL_BATCH_SIZE = 256


class PredictionRecord(BaseModel):
    model_config = {"frozen": True}

    record_ref: int
    date: Date
    prediction: float
    actual: float
    target: float


class MetricsReport(BaseModel):
    """Scores of one trained model on a held-out set.

    `within_2pct` / `within_5pct` exist only for regression targets; `test_mse`
    is measured against the targets the model was trained on (±1 when symbolic).
    """

    model_config = {"frozen": True}

    version: str
    arch: Literal["bert", "lstm"] = "bert"
    group: str = "general"
    target_mode: Literal["regression", "symbolic"] = "regression"
    direction_accuracy: float = Field(ge=0.0, le=1.0)
    within_2pct: float | None = Field(default=None, ge=0.0, le=1.0)
    within_5pct: float | None = Field(default=None, ge=0.0, le=1.0)
    test_mse: float = Field(ge=0.0, allow_inf_nan=False)
    n_test: int = Field(ge=1)
    per_example: list[PredictionRecord]

    @model_validator(mode="after")
    def validate_consistency(self) -> "MetricsReport":
        if self.n_test != len(self.per_example):
            raise ValueError(f"n_test {self.n_test} but {len(self.per_example)} per-example records")
        has_within = self.within_2pct is not None and self.within_5pct is not None
        absent = self.within_2pct is None and self.within_5pct is None
        if self.target_mode == "regression" and not has_within:
            raise ValueError("regression reports carry within_2pct and within_5pct")
        if self.target_mode == "symbolic" and not absent:
            raise ValueError("symbolic reports have no within_* metrics")
        return self


def evaluate_predictions(
    predictions: Sequence[float] | np.ndarray,
    refs: Sequence[tuple[int, Date, float, float]],
    version: str,
    target_mode: Literal["regression", "symbolic"],
    arch: Literal["bert", "lstm"] = "bert",
    group: str = "general",
) -> MetricsReport:
    """Build a report from predictions and their `(record_ref, date, actual, target)` rows."""
    preds = np.asarray(predictions, dtype=np.float64)
    if preds.shape != (len(refs),):
        raise ShapeError(f"{preds.shape[0] if preds.ndim else 0} predictions for {len(refs)} records")
    actuals = np.array([r[2] for r in refs], dtype=np.float64)
    targets = np.array([r[3] for r in refs], dtype=np.float64)

    within: dict[str, float | None] = {"within_2pct": None, "within_5pct": None}
    if target_mode == "regression":
        within["within_2pct"] = within_tolerance_directional(preds, actuals, 2.0)
        within["within_5pct"] = within_tolerance_directional(preds, actuals, 5.0)

    per_example = [
        PredictionRecord(record_ref=ref, date=day, prediction=float(p), actual=actual, target=target)
        for (ref, day, actual, target), p in zip(refs, preds)
    ]
    return MetricsReport(
        version=version,
        arch=arch,
        group=group,
        target_mode=target_mode,
        direction_accuracy=direction_accuracy(preds, actuals),
        test_mse=test_mse(preds, targets),
        n_test=len(per_example),
        per_example=per_example,
        **within,
    )


def predict_texts(texts: Sequence[str], params: Parameters, config: ModelConfig, vocab: Vocabulary) -> np.ndarray:
    chunks = range(0, len(texts), EVAL_BATCH_SIZE)
    out = []
    for start in tqdm(chunks, desc="predict", disable=not is_verbose()):
        batch = encode_batch(texts[start : start + EVAL_BATCH_SIZE], vocab, config.max_len)
        out.append(predict(batch, params, config))
    return np.concatenate(out) if out else np.zeros(0)


def evaluate_model(
    params: Parameters,
    config: ModelConfig,
    vocab: Vocabulary,
    dataset: Dataset,
    version: ModalityVersion,
    group: str = "general",
) -> MetricsReport:
    examples = build_examples(dataset, version)
    preds = predict_texts([e.input_text for e in examples], params, config, vocab)
    records = dataset.records
    refs = [(e.record_ref, records[e.record_ref].date, records[e.record_ref].pct_change, e.target) for e in examples]
    report = evaluate_predictions(preds, refs, version.id, version.target_mode, arch="bert", group=group)
    LOGGER.info(
        f"{version.label} on {report.n_test} records: direction {report.direction_accuracy:.4f}, mse {report.test_mse:.4f}"
    )
    return report
