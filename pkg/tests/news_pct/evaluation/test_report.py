from datetime import date

import numpy as np
import pytest
from pydantic import ValidationError

from news_pct.evaluation import (
    MetricsReport,
    PredictionRecord,
    compare_models,
    evaluate_predictions,
    paired_deltas,
    summarize_groups,
    trend_report,
)
from news_pct.evaluation.trend import pearson
from news_pct.constants import NOT_APPLICABLE
from news_pct.utils.errors import ShapeError, UsageError

DAYS = [date(2023, 1, d) for d in (2, 3, 4, 5)]


def refs_for(actuals: list[float], symbolic: bool = False) -> list[tuple[int, date, float, float]]:
    return [
        (i, DAYS[i % len(DAYS)], a, (1.0 if a >= 0 else -1.0) if symbolic else a) for i, a in enumerate(actuals)
    ]


def make_report(version: str, accuracy_preds: list[float], group: str = "general", arch: str = "bert") -> MetricsReport:
    actuals = [1.0, -1.0, 2.0, 0.5]
    mode = "symbolic" if version in ("v5", "v6") else "regression"
    return evaluate_predictions(
        accuracy_preds, refs_for(actuals, mode == "symbolic"), version, mode, arch=arch, group=group
    )


# --- reports ---
def test_regression_report_fields():
    report = evaluate_predictions([1.5, -0.5, 8.0], refs_for([1.0, 0.2, 2.0]), "v1", "regression")
    assert report.direction_accuracy == pytest.approx(2 / 3)
    assert report.within_2pct == pytest.approx(1 / 3)
    assert report.within_5pct == pytest.approx(1 / 3)
    assert report.n_test == 3 == len(report.per_example)
    assert report.per_example[1].prediction == -0.5


def test_symbolic_report_has_no_within_metrics():
    report = evaluate_predictions([0.9, -0.2], refs_for([3.0, 0.4], symbolic=True), "v5", "symbolic")
    assert report.within_2pct is None and report.within_5pct is None
    assert report.direction_accuracy == 0.5
    # mse against the ±1 targets
    assert report.test_mse == pytest.approx(((0.9 - 1.0) ** 2 + (-0.2 - 1.0) ** 2) / 2)


def test_report_validates_counts_and_within_presence():
    record = PredictionRecord(record_ref=0, date=DAYS[0], prediction=1.0, actual=1.0, target=1.0)
    with pytest.raises(ValidationError):
        MetricsReport(version="v1", direction_accuracy=1.0, within_2pct=1.0, within_5pct=1.0,
                      test_mse=0.0, n_test=2, per_example=[record])
    with pytest.raises(ValidationError):
        MetricsReport(version="v1", direction_accuracy=1.0, test_mse=0.0, n_test=1, per_example=[record])
    with pytest.raises(ValidationError):
        MetricsReport(version="v5", target_mode="symbolic", direction_accuracy=1.0, within_2pct=1.0,
                      within_5pct=1.0, test_mse=0.0, n_test=1, per_example=[record])


def test_prediction_count_must_match():
    with pytest.raises(ShapeError):
        evaluate_predictions([1.0], refs_for([1.0, 2.0]), "v1", "regression")


# --- trend ---
def test_trend_running_sums():
    report = evaluate_predictions([1.0, -1.0, 2.0, 0.0], refs_for([1.0, -1.0, 2.0, 0.0]), "v1", "regression")
    trend = trend_report(report.per_example)
    assert trend.cum_actual == [1.0, 0.0, 2.0, 2.0]
    assert trend.cum_predicted == trend.cum_actual
    assert trend.pearson_r == pytest.approx(1.0)


def test_trend_negated_predictions_anticorrelate():
    actuals = [1.0, -1.0, 2.0, 0.0]
    report = evaluate_predictions([-a for a in actuals], refs_for(actuals), "v1", "regression")
    assert trend_report(report.per_example).pearson_r == pytest.approx(-1.0)


def test_trend_orders_by_date_then_ref():
    records = [
        PredictionRecord(record_ref=5, date=DAYS[1], prediction=1.0, actual=3.0, target=3.0),
        PredictionRecord(record_ref=2, date=DAYS[1], prediction=1.0, actual=2.0, target=2.0),
        PredictionRecord(record_ref=9, date=DAYS[0], prediction=1.0, actual=1.0, target=1.0),
    ]
    trend = trend_report(records)
    assert trend.dates == [DAYS[0], DAYS[1], DAYS[1]]
    assert trend.cum_actual == [1.0, 3.0, 6.0]


def test_single_point_has_no_correlation():
    record = PredictionRecord(record_ref=0, date=DAYS[0], prediction=1.0, actual=1.0, target=1.0)
    trend = trend_report([record])
    assert trend.pearson_r is None
    assert trend.cum_predicted == [1.0]


def test_pearson_of_constant_series_is_undefined():
    assert pearson(np.array([1.0, 1.0, 1.0]), np.array([1.0, 2.0, 3.0])) is None


# --- comparison ---
def test_compare_rows_follow_input_order():
    a, b = make_report("v1", [1.0, -1.0, 2.0, 0.5]), make_report("v5", [1.0, 1.0, 1.0, 1.0])
    table = compare_models([a, b])
    assert [r.version for r in table.rows] == ["v1", "v5"]
    assert table.rows[1].cells()[5:7] == [NOT_APPLICABLE, NOT_APPLICABLE]
    assert table.rows[0].within_2pct == 1.0


def test_identical_reports_give_identical_rows():
    report = make_report("v2", [0.5, -0.5, 1.0, 1.0])
    table = compare_models([report, report])
    assert table.rows[0] == table.rows[1]


def test_compare_needs_two_reports():
    with pytest.raises(UsageError):
        compare_models([make_report("v1", [1.0, 1.0, 1.0, 1.0])])


def test_group_summaries_average_per_group_and_arch():
    reports = [
        make_report("v1", [1.0, -1.0, 2.0, 0.5], group="tech"),
        make_report("v5", [1.0, 1.0, 1.0, 1.0], group="tech"),
        make_report("v1", [1.0, 1.0, 1.0, 1.0], group="banks"),
        make_report("lstm", [1.0, -1.0, 2.0, 0.5], group="tech", arch="lstm"),
    ]
    summaries = summarize_groups(reports)
    assert [(s.group, s.arch, s.n_models) for s in summaries] == [("tech", "bert", 2), ("banks", "bert", 1), ("tech", "lstm", 1)]
    tech = summaries[0]
    assert tech.direction_accuracy == pytest.approx((1.0 + 0.75) / 2)
    # within_* come from the regression report only
    assert tech.within_2pct == 1.0


def test_paired_deltas():
    reports = [
        make_report("v1", [1.0, 1.0, 1.0, 1.0]),  # 0.75
        make_report("v5", [1.0, -1.0, 1.0, 1.0]),  # 1.0
        make_report("v4", [1.0, 1.0, -1.0, 1.0]),  # 0.5
        make_report("lstm", [1.0, -1.0, 1.0, 1.0], arch="lstm"),
    ]
    deltas = {(d.effect, d.first, d.second): d.delta for d in paired_deltas(reports)}
    assert deltas == {
        ("symbolic", "v1", "v5"): pytest.approx(0.25),
        ("date", "v1", "v4"): pytest.approx(-0.25),
    }
