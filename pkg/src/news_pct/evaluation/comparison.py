from logging import getLogger
from collections import defaultdict
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel

from news_pct.constants import NOT_APPLICABLE
from news_pct.utils.errors import UsageError
from news_pct.evaluation.report import MetricsReport

LOGGER = getLogger(__name__)

METRIC_COLUMNS = ("direction_accuracy", "within_2pct", "within_5pct", "test_mse", "n_test")
ROW_COLUMNS = ("version", "arch", "group", "target_mode") + METRIC_COLUMNS

# (first, second, effect): delta = accuracy(second) − accuracy(first)
PAIRED_VERSIONS = (
    ("v1", "v5", "symbolic"),
    ("v4", "v6", "symbolic"),
    ("v1", "v4", "date"),
    ("v5", "v6", "date"),
)


class ComparisonRow(BaseModel):
    model_config = {"frozen": True}

    version: str
    arch: str
    group: str
    target_mode: str
    direction_accuracy: float
    within_2pct: float | None
    within_5pct: float | None
    test_mse: float
    n_test: int

    @classmethod
    def from_report(cls, report: MetricsReport) -> "ComparisonRow":
        return cls.model_validate(report.model_dump(include=set(ROW_COLUMNS)))

    def cells(self) -> list[str]:
        """Row as text, absent metrics shown as N/A."""
        values = self.model_dump()
        return [NOT_APPLICABLE if values[c] is None else str(values[c]) for c in ROW_COLUMNS]


class ComparisonTable(BaseModel):
    model_config = {"frozen": True}

    rows: list[ComparisonRow]


class GroupSummary(BaseModel):
    model_config = {"frozen": True}

    group: str
    arch: str
    n_models: int
    direction_accuracy: float
    within_2pct: float | None
    within_5pct: float | None
    test_mse: float


class PairedDelta(BaseModel):
    model_config = {"frozen": True}

    group: str
    effect: str
    first: str
    second: str
    delta: float


def compare_models(reports: Sequence[MetricsReport]) -> ComparisonTable:
    """Aligned metric table, one row per report in input order."""
    if len(reports) < 2:
        raise UsageError(f"comparison needs at least 2 reports, got {len(reports)}")
    return ComparisonTable(rows=[ComparisonRow.from_report(r) for r in reports])


def _mean(values: list[float]) -> float | None:
    return float(np.mean(values)) if values else None


def summarize_groups(reports: Sequence[MetricsReport]) -> list[GroupSummary]:
    """Mean metrics per (group, arch) in first-seen order; within_* over regression reports only."""
    buckets: dict[tuple[str, str], list[MetricsReport]] = defaultdict(list)
    for r in reports:
        buckets[(r.group, r.arch)].append(r)

    summaries = []
    for (group, arch), members in buckets.items():
        regression = [m for m in members if m.target_mode == "regression"]
        summaries.append(
            GroupSummary(
                group=group,
                arch=arch,
                n_models=len(members),
                direction_accuracy=float(np.mean([m.direction_accuracy for m in members])),
                within_2pct=_mean([m.within_2pct for m in regression if m.within_2pct is not None]),
                within_5pct=_mean([m.within_5pct for m in regression if m.within_5pct is not None]),
                test_mse=float(np.mean([m.test_mse for m in members])),
            )
        )
    return summaries


def paired_deltas(reports: Sequence[MetricsReport]) -> list[PairedDelta]:
    """Direction-accuracy change from symbolic training and from adding the date, per group.

    Only encoder reports take part; a pair is skipped when either side is missing.
    Repeated runs of one version within a group are averaged.
    """
    accuracy: dict[tuple[str, str], list[float]] = defaultdict(list)
    groups: list[str] = []
    for r in reports:
        if r.arch != "bert":
            continue
        accuracy[(r.group, r.version)].append(r.direction_accuracy)
        if r.group not in groups:
            groups.append(r.group)

    deltas = []
    for group in groups:
        for first, second, effect in PAIRED_VERSIONS:
            a, b = accuracy.get((group, first)), accuracy.get((group, second))
            if not a or not b:
                LOGGER.debug(f"group {group}: no {first}/{second} pair, skipping {effect} delta")
                continue
            delta = float(np.mean(b) - np.mean(a))
            deltas.append(PairedDelta(group=group, effect=effect, first=first, second=second, delta=delta))
    return deltas
