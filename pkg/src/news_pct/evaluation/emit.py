"""
Writers for reports, comparison tables and trend charts.

JSON and CSV output is byte-deterministic: keys and columns are in fixed
order and floats use the shortest round-trip representation. SVG charts are
rendered with a fixed hash salt and no timestamp so reruns match byte for byte.
"""

from pathlib import Path
from logging import getLogger
from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

import pandas as pd
from matplotlib import rc_context
from matplotlib.figure import Figure
from pydantic import BaseModel, ValidationError

from news_pct.constants import NOT_APPLICABLE, REPORT_FORMATS
from news_pct.utils.errors import UsageError, DatasetFormatError
from news_pct.evaluation.report import MetricsReport
from news_pct.evaluation.trend import TrendSeries, trend_report
from news_pct.evaluation.comparison import ROW_COLUMNS, ComparisonRow, ComparisonTable, GroupSummary, PairedDelta

LOGGER = getLogger(__name__)

SVG_HASH_SALT = "news-pct"
SERIES_IDS = ("cum_predicted", "cum_actual")
MAX_DATE_TICKS = 8

type Emittable = MetricsReport | ComparisonTable | TrendSeries | Sequence[GroupSummary] | Sequence[PairedDelta]


def _cell(value: object) -> str:
    if value is None:
        return NOT_APPLICABLE
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(rows: list[dict], columns: Sequence[str], path: Path) -> None:
    frame = pd.DataFrame([[_cell(row[c]) for c in columns] for row in rows], columns=list(columns))
    frame.to_csv(path, index=False, lineterminator="\n")


def _write_json(item: BaseModel | Sequence[BaseModel], path: Path) -> None:
    if isinstance(item, MetricsReport):
        # symbolic reports omit within_* entirely
        text = item.model_dump_json(indent=2, exclude_none=True)
    elif isinstance(item, BaseModel):
        text = item.model_dump_json(indent=2)
    else:
        text = "[\n" + ",\n".join(row.model_dump_json(indent=2) for row in item) + "\n]"
    path.write_text(text + "\n", encoding="utf-8")


def _trend_figure(trend: TrendSeries, title: str) -> Figure:
    fig = Figure(figsize=(8, 4.5))
    ax = fig.add_subplot()
    x = list(range(len(trend.dates)))
    ax.plot(x, trend.cum_predicted, label="cumulative predicted", gid=SERIES_IDS[0])
    ax.plot(x, trend.cum_actual, label="cumulative actual", gid=SERIES_IDS[1])
    step = max(1, len(x) // MAX_DATE_TICKS)
    ax.set_xticks(x[::step], [d.isoformat() for d in trend.dates[::step]], rotation=30, ha="right")
    ax.set_ylabel("percent change (sum)")
    r = "n/a" if trend.pearson_r is None else f"{trend.pearson_r:.3f}"
    ax.set_title(f"{title} (pearson r = {r})")
    ax.legend(loc="best")
    fig.tight_layout()
    return fig


def _table_figure(table: ComparisonTable) -> Figure:
    fig = Figure(figsize=(max(6, len(table.rows) * 0.8), 4.5))
    ax = fig.add_subplot()
    labels = [f"{r.group}/{r.arch}/{r.version}" for r in table.rows]
    ax.bar(range(len(labels)), [r.direction_accuracy for r in table.rows], gid="direction_accuracy")
    ax.set_xticks(range(len(labels)), labels, rotation=45, ha="right")
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("direction accuracy")
    fig.tight_layout()
    return fig


def _write_svg(fig: Figure, path: Path) -> None:
    with rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def emit_report(item: Emittable, path: str | Path, fmt: str | None = None) -> Path:
    """Write a report, comparison table, trend series or summary list as json, csv or svg.

    The format defaults to the file suffix.
    """
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".")).lower()
    if fmt not in REPORT_FORMATS:
        raise UsageError(f"unsupported report format {fmt!r}; expected one of {sorted(REPORT_FORMATS)}")
    path.parent.mkdir(parents=True, exist_ok=True)

    if fmt == "json":
        _write_json(item, path)
    elif fmt == "csv":
        if isinstance(item, MetricsReport):
            _write_csv([ComparisonRow.from_report(item).model_dump()], ROW_COLUMNS, path)
        elif isinstance(item, ComparisonTable):
            _write_csv([row.model_dump() for row in item.rows], ROW_COLUMNS, path)
        elif isinstance(item, TrendSeries):
            rows = [
                {"date": d.isoformat(), "cum_predicted": p, "cum_actual": a}
                for d, p, a in zip(item.dates, item.cum_predicted, item.cum_actual)
            ]
            _write_csv(rows, ("date",) + SERIES_IDS, path)
        else:
            rows = [row.model_dump() for row in item]
            columns = list(rows[0]) if rows else []
            _write_csv(rows, columns, path)
    else:
        if isinstance(item, MetricsReport):
            fig = _trend_figure(trend_report(item.per_example), f"{item.group} {item.arch} {item.version}")
        elif isinstance(item, TrendSeries):
            fig = _trend_figure(item, "cumulative percent change")
        elif isinstance(item, ComparisonTable):
            fig = _table_figure(item)
        else:
            raise UsageError("svg output is available for reports, trends and comparison tables only")
        _write_svg(fig, path)

    LOGGER.info(f"Wrote {fmt} report to {path}")
    return path


def load_report_json(path: str | Path) -> MetricsReport:
    try:
        return MetricsReport.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise DatasetFormatError(f"{path}: not a metrics report: {e.errors()[0]['msg']}") from None


def load_report_csv(path: str | Path) -> list[ComparisonRow]:
    """Rows of a report or comparison-table CSV, N/A cells read back as absent."""
    frame = pd.read_csv(path, dtype=str, keep_default_na=False, na_filter=False)
    if tuple(frame.columns) != ROW_COLUMNS:
        raise DatasetFormatError(f"{path}: expected columns {', '.join(ROW_COLUMNS)}")
    rows = []
    for i, record in enumerate(frame.to_dict(orient="records"), start=1):
        values = {k: (None if v == NOT_APPLICABLE else v) for k, v in record.items()}
        try:
            rows.append(ComparisonRow.model_validate(values))
        except ValidationError as e:
            raise DatasetFormatError(e.errors()[0]["msg"], row=i) from None
    return rows
