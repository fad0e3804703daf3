from os import environ
from datetime import date

import pytest

from news_pct.__main__ import setup_logging
from news_pct.data.record import Dataset, NewsRecord


@pytest.fixture(scope="session", autouse=True)
def init_testing(tmp_path_factory):
    environ["NEWS_PCT_TESTING"] = "1"
    environ.setdefault("NEWS_PCT_LOG_DIR", str(tmp_path_factory.mktemp("logs")))
    setup_logging()


def make_record(
    day: str = "2023-03-01",
    ticker: str = "ACME",
    headline: str = "Acme beats estimates",
    open_price: float = 100.0,
    close_price: float = 102.0,
    company: str = "Acme Corp",
    source: str = "Daily Ledger",
) -> NewsRecord:
    return NewsRecord.from_prices(
        date=date.fromisoformat(day),
        ticker=ticker,
        company=company,
        headline=headline,
        source=source,
        open_price=open_price,
        close_price=close_price,
    )


@pytest.fixture
def record() -> NewsRecord:
    return make_record()


@pytest.fixture
def small_dataset() -> Dataset:
    rows = [
        make_record("2023-03-01", "ACME", "Acme beats estimates", 100.0, 102.0),
        make_record("2023-03-01", "GLBX", "Globex misses targets", 50.0, 49.0, company="Globex Inc."),
        make_record("2023-03-02", "ACME", "Acme recalls widgets", 102.0, 99.96),
        make_record("2023-03-02", "GLBX", "Globex shares flat", 49.0, 49.0, company="Globex Inc."),
        make_record("2023-03-03", "ACME", "Acme wins contract", 99.96, 104.958),
    ]
    return Dataset(records=tuple(rows))
