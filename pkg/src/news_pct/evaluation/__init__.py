from news_pct.evaluation.metrics import (
    direction,
    test_mse,
    direction_accuracy,
    within_tolerance_directional,
)
from news_pct.evaluation.report import MetricsReport, PredictionRecord, evaluate_model, evaluate_predictions
from news_pct.evaluation.trend import TrendSeries, trend_report
from news_pct.evaluation.comparison import (
    ComparisonRow,
    ComparisonTable,
    GroupSummary,
    PairedDelta,
    compare_models,
    paired_deltas,
    summarize_groups,
)
from news_pct.evaluation.emit import emit_report, load_report_csv, load_report_json

__all__ = [
    "ComparisonRow",
    "ComparisonTable",
    "GroupSummary",
    "MetricsReport",
    "PairedDelta",
    "PredictionRecord",
    "TrendSeries",
    "direction",
    "test_mse",
    "emit_report",
    "trend_report",
    "paired_deltas",
    "compare_models",
    "evaluate_model",
    "load_report_csv",
    "load_report_json",
    "summarize_groups",
    "direction_accuracy",
    "evaluate_predictions",
    "within_tolerance_directional",
]
