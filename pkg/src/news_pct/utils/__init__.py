from news_pct.utils.errors import (
    ShapeError,
    UsageError,
    DomainError,
    NewsPctError,
    NonFiniteError,
    CheckpointError,
    PctMismatchError,
    PriceDomainError,
    SymbolicModeError,
    DatasetFormatError,
    CheckpointShapeError,
    TrainingDivergedError,
    CorruptCheckpointError,
)
from news_pct.utils.hashing import (
    stream_key,
    compute_sha256,
    verify_sha256,
    validate_sha256,
)

__all__ = [
    "ShapeError",
    "UsageError",
    "DomainError",
    "NewsPctError",
    "NonFiniteError",
    "CheckpointError",
    "PctMismatchError",
    "PriceDomainError",
    "SymbolicModeError",
    "DatasetFormatError",
    "CheckpointShapeError",
    "TrainingDivergedError",
    "CorruptCheckpointError",
    "stream_key",
    "compute_sha256",
    "verify_sha256",
    "validate_sha256",
]
