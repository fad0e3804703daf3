import pytest

from news_pct.utils.errors import (
    CheckpointError,
    CorruptCheckpointError,
    DatasetFormatError,
    DomainError,
    NewsPctError,
    NonFiniteError,
    PctMismatchError,
    PriceDomainError,
    ShapeError,
    TrainingDivergedError,
    UsageError,
)


def test_format_error_names_row_and_field():
    e = DatasetFormatError("not a decimal number", row=3, field="open")
    assert str(e) == "row 3, field 'open': not a decimal number"
    assert (e.row, e.field) == (3, "open")


def test_format_error_without_location():
    assert str(DatasetFormatError("no header")) == "no header"


def test_price_error_is_both_format_and_domain_error():
    e = PriceDomainError("price must be > 0", row=1, field="close")
    assert isinstance(e, DatasetFormatError) and isinstance(e, DomainError)


@pytest.mark.parametrize(
    "error",
    [
        UsageError("x"),
        ShapeError("x"),
        PctMismatchError("x"),
        NonFiniteError("w", "gradient"),
        TrainingDivergedError(2, 5, float("nan")),
        CorruptCheckpointError("x"),
    ],
)
def test_every_error_shares_the_base(error):
    assert isinstance(error, NewsPctError)


def test_checkpoint_errors_share_a_parent():
    assert issubclass(CorruptCheckpointError, CheckpointError)


def test_diverged_message_locates_the_batch():
    message = str(TrainingDivergedError(2, 5, float("inf")))
    assert "2" in message and "5" in message
