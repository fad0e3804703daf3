import math

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from news_pct.data import Dataset
from news_pct.modality import VERSIONS, ModalityVersion, build_examples, compose_input, make_target, parse_version
from news_pct.utils.errors import DomainError, UsageError
from tests.conftest import make_record


@pytest.fixture
def apple():
    return make_record(
        day="2023-01-15", ticker="AAPL", headline="Apple beats earnings", company="Apple Inc.", source="Reuters"
    )


# --- versions ---
@pytest.mark.parametrize(
    "version_id, source, company, date, mode",
    [
        ("v1", True, True, False, "regression"),
        ("v2", False, True, False, "regression"),
        ("v3", True, False, False, "regression"),
        ("v4", True, True, True, "regression"),
        ("v5", True, True, False, "symbolic"),
        ("v6", True, True, True, "symbolic"),
    ],
)
def test_version_table(version_id, source, company, date, mode):
    v = VERSIONS[version_id]
    assert (v.include_headline, v.include_source, v.include_company, v.include_date, v.target_mode) == (
        True,
        source,
        company,
        date,
        mode,
    )


@pytest.mark.parametrize("text", ["V2", "v2", " v2 "])
def test_parse_version_is_case_insensitive(text):
    assert parse_version(text) is VERSIONS["v2"]


@pytest.mark.parametrize("text", ["v7", "v0", "", "two"])
def test_unknown_version_is_a_usage_error(text):
    with pytest.raises(UsageError):
        parse_version(text)


def test_headline_is_always_included():
    with pytest.raises(ValidationError):
        ModalityVersion(
            id="v1", include_headline=False, include_source=True, include_company=True, include_date=False,
            target_mode="regression",
        )


def test_labels_mark_symbolic_versions():
    assert VERSIONS["v5"].label.startswith("v5*")
    assert "*" not in VERSIONS["v1"].label


# --- compose_input ---
def test_v2_joins_headline_and_company(apple):
    assert compose_input(apple, VERSIONS["v2"]) == "Apple beats earnings | Apple Inc."


def test_v3_never_mentions_the_company(apple):
    assert "Apple Inc." not in compose_input(apple, VERSIONS["v3"])
    assert compose_input(apple, VERSIONS["v3"]) == "Apple beats earnings | Reuters"


def test_v4_adds_only_the_trailing_date(apple):
    v1 = compose_input(apple, VERSIONS["v1"])
    v4 = compose_input(apple, VERSIONS["v4"])
    assert v4 == v1 + " | 2023-01-15"


@pytest.mark.parametrize("pair", [("v1", "v5"), ("v4", "v6")])
def test_symbolic_twins_share_input_text(apple, pair):
    a, b = (VERSIONS[v] for v in pair)
    assert compose_input(apple, a) == compose_input(apple, b)


# --- make_target ---
@pytest.mark.parametrize(
    "pct, mode, expected",
    [
        (2.1232, "symbolic", 1.0),
        (-3.0832, "symbolic", -1.0),
        (2.1232, "regression", 2.1232),
        (0.0, "symbolic", 1.0),
        (-0.0, "symbolic", 1.0),
    ],
)
def test_make_target(pct, mode, expected):
    assert make_target(pct, mode) == expected


@pytest.mark.parametrize("pct", [math.nan, math.inf, -math.inf])
def test_non_finite_target_is_a_domain_error(pct):
    with pytest.raises(DomainError):
        make_target(pct, "regression")


@given(st.floats(allow_nan=False, allow_infinity=False).filter(lambda x: x != 0))
def test_symbolic_target_is_scale_invariant(x):
    assert make_target(x, "symbolic") == make_target(math.copysign(1.0, x), "symbolic")


# --- build_examples ---
def test_empty_dataset_gives_no_examples():
    assert build_examples(Dataset(), VERSIONS["v1"]) == []


def test_examples_follow_record_order(small_dataset):
    examples = build_examples(small_dataset, VERSIONS["v1"])
    assert [e.record_ref for e in examples] == list(range(len(small_dataset)))
    assert [e.target for e in examples] == [r.pct_change for r in small_dataset.records]


def test_v5_targets_are_signs():
    dataset = Dataset(
        records=(
            make_record(open_price=100.0, close_price=103.0),
            make_record(open_price=100.0, close_price=99.0),
            make_record(open_price=100.0, close_price=100.5),
        )
    )
    assert [e.target for e in build_examples(dataset, VERSIONS["v5"])] == [1.0, -1.0, 1.0]
