from news_pct.data.record import (
    Dataset,
    NewsRecord,
    filter_tickers,
    parse_iso_date,
    compute_pct_change,
)
from news_pct.data.dataset_io import (
    RowIssue,
    ValidationReport,
    load_dataset,
    save_dataset,
    validate_dataset,
)
from news_pct.data.split import SPLIT_SPEC_DEFAULTS, SplitSpec, split, held_out_size
from news_pct.data.synthetic import SYNTH_CONFIG_DEFAULTS, SynthConfig, generate_synthetic

__all__ = [
    "Dataset",
    "NewsRecord",
    "RowIssue",
    "SplitSpec",
    "SynthConfig",
    "ValidationReport",
    "SPLIT_SPEC_DEFAULTS",
    "SYNTH_CONFIG_DEFAULTS",
    "split",
    "held_out_size",
    "load_dataset",
    "save_dataset",
    "filter_tickers",
    "parse_iso_date",
    "validate_dataset",
    "compute_pct_change",
    "generate_synthetic",
]
