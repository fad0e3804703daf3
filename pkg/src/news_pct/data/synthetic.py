from typing import Any, Literal
from logging import getLogger
from datetime import date as Date

import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator

from news_pct.numerics.rng import Rng, MAX_SEED
from news_pct.data.record import Dataset, NewsRecord

LOGGER = getLogger(__name__)

# pct changes are clamped above this so back-solved close prices stay positive
MIN_SYNTH_PCT = -95.0

SYNTH_CONFIG_DEFAULTS: dict[str, Any] = {
    "kind": "lexicon",
    "n_records": 2000,
    "positive_lexicon": ["surges", "beats", "soars", "record", "upgrade", "profit", "rally", "growth"],
    "negative_lexicon": ["plunges", "misses", "slumps", "lawsuit", "downgrade", "loss", "recall", "layoffs"],
    "neutral_lexicon": ["shares", "today", "report", "quarter", "market", "investors", "update", "news"],
    "lexicon_words": 2,
    "neutral_words": 2,
    "signal_mean": 2.0,
    "noise_stddev": 1.0,
    "ar_coefficient": 0.8,
    "seed": 0,
    "start_date": "2022-01-03",
    "companies": [
        ("ACME", "Acme Corp"),
        ("GLBX", "Globex Inc."),
        ("INTL", "Initech Ltd."),
        ("UMBR", "Umbrella Group"),
        ("STRK", "Stark Industries"),
    ],
    "sources": ["Daily Ledger", "Market Wire", "Finance Post"],
}


class SynthConfig(BaseModel):
    """Parameters of the synthetic oracle datasets.

    `lexicon` draws headlines from a positive or negative word list and a percent
    change of ±signal_mean plus Gaussian noise. `ar1` draws a per-ticker AR(1)
    percent-change series with neutral headlines, for the price-history baseline.
    """

    model_config = {"frozen": True}

    kind: Literal["lexicon", "ar1"] = SYNTH_CONFIG_DEFAULTS["kind"]
    n_records: int = Field(default=SYNTH_CONFIG_DEFAULTS["n_records"], ge=1)
    positive_lexicon: list[str] = Field(default=SYNTH_CONFIG_DEFAULTS["positive_lexicon"], min_length=1)
    negative_lexicon: list[str] = Field(default=SYNTH_CONFIG_DEFAULTS["negative_lexicon"], min_length=1)
    neutral_lexicon: list[str] = Field(default=SYNTH_CONFIG_DEFAULTS["neutral_lexicon"], min_length=1)
    lexicon_words: int = Field(default=SYNTH_CONFIG_DEFAULTS["lexicon_words"], ge=1)
    neutral_words: int = Field(default=SYNTH_CONFIG_DEFAULTS["neutral_words"], ge=0)
    signal_mean: float = Field(default=SYNTH_CONFIG_DEFAULTS["signal_mean"], ge=0.0, allow_inf_nan=False)
    noise_stddev: float = Field(default=SYNTH_CONFIG_DEFAULTS["noise_stddev"], ge=0.0, allow_inf_nan=False)
    ar_coefficient: float = Field(default=SYNTH_CONFIG_DEFAULTS["ar_coefficient"], gt=-1.0, lt=1.0)
    seed: int = Field(default=SYNTH_CONFIG_DEFAULTS["seed"], ge=0, le=MAX_SEED)
    start_date: Date = Field(default=Date.fromisoformat(SYNTH_CONFIG_DEFAULTS["start_date"]))
    companies: list[tuple[str, str]] = Field(
        default=SYNTH_CONFIG_DEFAULTS["companies"], min_length=1, validate_default=True
    )
    sources: list[str] = Field(default=SYNTH_CONFIG_DEFAULTS["sources"], min_length=1)

    @field_validator("positive_lexicon", "negative_lexicon", "neutral_lexicon")
    def validate_lexicon_words(cls, words: list[str]) -> list[str]:
        for word in words:
            if not word.strip() or any(ch.isspace() for ch in word):
                raise ValueError(f"Invalid lexicon word: {word!r}")
        return words

    @model_validator(mode="after")
    def validate_lexicons_disjoint(self) -> "SynthConfig":
        pos = {w.lower() for w in self.positive_lexicon}
        neg = {w.lower() for w in self.negative_lexicon}
        neutral = {w.lower() for w in self.neutral_lexicon}
        if pos & neg:
            raise ValueError(f"positive and negative lexicons overlap: {sorted(pos & neg)}")
        if neutral & (pos | neg):
            raise ValueError(f"neutral lexicon overlaps a signed lexicon: {sorted(neutral & (pos | neg))}")
        return self


def _trading_days(start: Date, count: int) -> list[Date]:
    return [ts.date() for ts in pd.bdate_range(start=start, periods=count)]


def _price_record(
    rng: Rng, day: Date, ticker: str, company: str, headline: str, source: str, pct: float
) -> NewsRecord:
    # open is rounded to cents and close back-solved; the drawn pct is kept as the label
    pct = max(pct, MIN_SYNTH_PCT)
    open_price = round(float(rng.uniform(10.0, 500.0)), 2)
    close_price = open_price * (1.0 + pct / 100.0)
    return NewsRecord(
        date=day,
        ticker=ticker,
        company=company,
        headline=headline,
        source=source,
        open_price=open_price,
        close_price=close_price,
        pct_change=pct,
    )


def _headline(rng: Rng, signed: list[str], config: SynthConfig) -> str:
    words = list(rng.choice(signed, config.lexicon_words))
    if config.neutral_words:
        words += rng.choice(config.neutral_lexicon, config.neutral_words)
    order = rng.permutation(len(words))
    text = " ".join(words[int(i)] for i in order)
    return text[0].upper() + text[1:]


def generate_synthetic(config: SynthConfig) -> Dataset:
    """Generate a dataset whose labels are a known function of the headline words.

    Records rotate through `config.companies`, so every ticker gets a
    date-ordered series of trading days starting at `config.start_date`.
    """
    if config.kind == "ar1":
        return _generate_ar1(config)

    rng = Rng(config.seed, "synth")
    n_companies = len(config.companies)
    days = _trading_days(config.start_date, (config.n_records + n_companies - 1) // n_companies)

    records: list[NewsRecord] = []
    for i in range(config.n_records):
        ticker, company = config.companies[i % n_companies]
        positive = bool(rng.uniform() < 0.5)
        lexicon = config.positive_lexicon if positive else config.negative_lexicon
        headline = _headline(rng, lexicon, config)
        sign = 1.0 if positive else -1.0
        pct = sign * config.signal_mean + config.noise_stddev * float(rng.normal())
        source = rng.choice(config.sources)
        records.append(_price_record(rng, days[i // n_companies], ticker, company, headline, source, pct))

    LOGGER.info(f"Generated {len(records)} lexicon records (signal {config.signal_mean}, noise {config.noise_stddev})")
    return Dataset(records=tuple(records), provenance="synthetic")


def _generate_ar1(config: SynthConfig) -> Dataset:
    rng = Rng(config.seed, "synth/ar1")
    n_companies = len(config.companies)
    per_ticker = (config.n_records + n_companies - 1) // n_companies
    days = _trading_days(config.start_date, per_ticker)
    previous = [0.0] * n_companies

    records: list[NewsRecord] = []
    for i in range(config.n_records):
        slot = i % n_companies
        ticker, company = config.companies[slot]
        pct = config.ar_coefficient * previous[slot] + config.noise_stddev * float(rng.normal())
        previous[slot] = pct
        headline = _headline(rng, config.neutral_lexicon, config.model_copy(update={"neutral_words": 0}))
        source = rng.choice(config.sources)
        records.append(_price_record(rng, days[i // n_companies], ticker, company, headline, source, pct))

    LOGGER.info(f"Generated {len(records)} AR(1) records (coefficient {config.ar_coefficient})")
    return Dataset(records=tuple(records), provenance="synthetic")
