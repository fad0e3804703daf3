class NewsPctError(Exception):
    """Base class for every error raised by news_pct."""


class DomainError(NewsPctError, ValueError):
    """A value lies outside the domain of an operation (e.g. a non-positive price)."""


class UsageError(NewsPctError, ValueError):
    """A caller asked for something the operation does not support."""


class DatasetFormatError(NewsPctError, ValueError):
    """A dataset file does not match the CSV schema."""

    def __init__(self, message: str, row: int | None = None, field: str | None = None):
        where = ""
        if row is not None:
            where = f"row {row}"
            if field:
                where += f", field '{field}'"
            where += ": "
        super().__init__(f"{where}{message}")
        self.row = row
        self.field = field


class PctMismatchError(DatasetFormatError):
    """Stored pct_change disagrees with the value recomputed from the prices."""


class ShapeError(NewsPctError, ValueError):
    """Tensor shapes do not agree."""


class NonFiniteError(NewsPctError, ArithmeticError):
    """A NaN or Inf appeared in a tensor."""

    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"non-finite values in '{name}'{f': {detail}' if detail else ''}")
        self.name = name


class TrainingDivergedError(NewsPctError, ArithmeticError):
    """Loss became non-finite during training."""

    def __init__(self, epoch: int, batch: int, loss: float):
        super().__init__(f"non-finite loss {loss} at epoch {epoch}, batch {batch}")
        self.epoch = epoch
        self.batch = batch


class SymbolicModeError(NewsPctError, ValueError):
    """A price-magnitude metric was requested for a symbolically trained model."""


class CheckpointError(NewsPctError):
    """Checkpoint cannot be read or written."""


class CorruptCheckpointError(CheckpointError):
    """Checkpoint bytes are truncated, have a bad magic or fail the digest check."""


class CheckpointShapeError(CheckpointError):
    """Checkpoint tensors do not match the expected configuration."""


class PriceDomainError(DatasetFormatError, DomainError):
    """A dataset row carries a non-positive price."""
