"""
Checkpoint files.

Layout, all integers little-endian:

    magic          4 bytes   b"NFP1" (encoder) or b"NFL1" (LSTM baseline)
    header_length  u64
    header         UTF-8 JSON: format version, configs, vocabulary, tensor names and shapes
    tensors        raw '<f8' values, one tensor after another in header order
    digest         32 bytes  sha256 of everything above

Nothing is returned from a file whose digest, magic or length does not check out.
"""

from pathlib import Path
from hashlib import sha256
from logging import getLogger
from dataclasses import dataclass
from collections.abc import Mapping

import numpy as np
from pydantic import BaseModel, ValidationError

from news_pct.constants import (
    LSTM_CHECKPOINT_MAGIC,
    BERT_CHECKPOINT_MAGIC,
    CHECKPOINT_FORMAT_VERSION,
)
from news_pct.model.config import ModelConfig
from news_pct.model.params import Parameters, tensor_shapes
from news_pct.tokenizer.vocab import Vocabulary
from news_pct.training.config import TrainConfig
from news_pct.utils.errors import CheckpointError, CheckpointShapeError, CorruptCheckpointError

LOGGER = getLogger(__name__)

MAGIC_SIZE = 4
LENGTH_SIZE = 8
DIGEST_SIZE = 32
TENSOR_DTYPE = np.dtype("<f8")
MAGIC_TO_ARCH = {BERT_CHECKPOINT_MAGIC: "bert", LSTM_CHECKPOINT_MAGIC: "lstm"}


class TensorEntry(BaseModel):
    name: str
    shape: list[int]


class ArchiveHeader(BaseModel):
    format_version: int
    metadata: dict
    tensors: list[TensorEntry]


class CheckpointConfigs(BaseModel):
    """Everything besides the weights needed to rebuild and rerun an encoder."""

    model_config = {"frozen": True}

    model: ModelConfig
    train: TrainConfig
    version_id: str


@dataclass
class BertCheckpoint:
    params: Parameters
    configs: CheckpointConfigs
    vocab: Vocabulary


def write_archive(
    path: str | Path, magic: bytes, metadata: Mapping, tensors: Mapping[str, np.ndarray]
) -> Path:
    path = Path(path)
    header = ArchiveHeader(
        format_version=CHECKPOINT_FORMAT_VERSION,
        metadata=dict(metadata),
        tensors=[TensorEntry(name=name, shape=list(t.shape)) for name, t in tensors.items()],
    )
    header_bytes = header.model_dump_json().encode("utf-8")

    body = bytearray(magic)
    body += len(header_bytes).to_bytes(LENGTH_SIZE, "little")
    body += header_bytes
    for t in tensors.values():
        body += np.ascontiguousarray(t, dtype=TENSOR_DTYPE).tobytes()
    body += sha256(body).digest()

    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(bytes(body))
    LOGGER.debug(f"Wrote {len(body)} bytes ({len(tensors)} tensors) to {path}")
    return path


def checkpoint_arch(path: str | Path) -> str:
    """'bert' or 'lstm', from the file's magic."""
    with open(path, "rb") as f:
        magic = f.read(MAGIC_SIZE)
    if magic not in MAGIC_TO_ARCH:
        raise CorruptCheckpointError(f"{path}: unknown checkpoint magic {magic!r}")
    return MAGIC_TO_ARCH[magic]


def read_archive(path: str | Path, magic: bytes) -> tuple[dict, dict[str, np.ndarray]]:
    data = Path(path).read_bytes()
    if len(data) < MAGIC_SIZE + LENGTH_SIZE + DIGEST_SIZE:
        raise CorruptCheckpointError(f"{path}: truncated ({len(data)} bytes)")
    if data[:MAGIC_SIZE] != magic:
        found = MAGIC_TO_ARCH.get(data[:MAGIC_SIZE], repr(data[:MAGIC_SIZE]))
        raise CorruptCheckpointError(f"{path}: expected a {MAGIC_TO_ARCH[magic]} checkpoint, found {found}")
    payload, digest = data[:-DIGEST_SIZE], data[-DIGEST_SIZE:]
    if sha256(payload).digest() != digest:
        raise CorruptCheckpointError(f"{path}: digest mismatch (truncated or modified file)")

    offset = MAGIC_SIZE + LENGTH_SIZE
    header_length = int.from_bytes(payload[MAGIC_SIZE:offset], "little")
    if offset + header_length > len(payload):
        raise CorruptCheckpointError(f"{path}: header length {header_length} runs past the end of the file")
    try:
        header = ArchiveHeader.model_validate_json(payload[offset : offset + header_length])
    except ValidationError as e:
        raise CorruptCheckpointError(f"{path}: unreadable header: {e.errors()[0]['msg']}") from None
    if header.format_version != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointError(
            f"{path}: format version {header.format_version} is not supported (expected {CHECKPOINT_FORMAT_VERSION})"
        )

    offset += header_length
    tensors: dict[str, np.ndarray] = {}
    for entry in header.tensors:
        nbytes = int(np.prod(entry.shape, dtype=np.int64)) * TENSOR_DTYPE.itemsize
        if offset + nbytes > len(payload):
            raise CorruptCheckpointError(f"{path}: tensor '{entry.name}' runs past the end of the file")
        chunk = np.frombuffer(payload, dtype=TENSOR_DTYPE, count=nbytes // TENSOR_DTYPE.itemsize, offset=offset)
        tensors[entry.name] = chunk.reshape(entry.shape).astype(np.float64)
        offset += nbytes
    if offset != len(payload):
        raise CorruptCheckpointError(f"{path}: {len(payload) - offset} unexpected trailing bytes")
    return header.metadata, tensors


def config_mismatch(expected: BaseModel, found: BaseModel) -> list[str]:
    """Human-readable 'field: expected X, found Y' lines for every differing field."""
    want, got = expected.model_dump(), found.model_dump()
    return [f"{k}: expected {want[k]!r}, found {got.get(k)!r}" for k in want if want[k] != got.get(k)]


def save_checkpoint(params: Parameters, configs: CheckpointConfigs, vocab: Vocabulary, path: str | Path) -> Path:
    expected = tensor_shapes(configs.model)
    actual = {name: tuple(t.shape) for name, t in params.items()}
    if actual != expected:
        raise CheckpointShapeError("parameters do not match the model configuration they are saved with")
    metadata = {"configs": configs.model_dump(mode="json"), "vocab": list(vocab.tokens)}
    path = write_archive(path, BERT_CHECKPOINT_MAGIC, metadata, params.tensors)
    LOGGER.info(f"Saved {configs.version_id} encoder checkpoint to {path}")
    return path


def load_checkpoint(path: str | Path, expected_config: ModelConfig | None = None) -> BertCheckpoint:
    """Read an encoder checkpoint back bit-exactly.

    Raises:
        CorruptCheckpointError: truncated file, wrong magic or failed digest.
        CheckpointShapeError: stored tensors disagree with `expected_config`
            (or with the file's own configuration).
    """
    metadata, tensors = read_archive(path, BERT_CHECKPOINT_MAGIC)
    try:
        configs = CheckpointConfigs.model_validate(metadata["configs"])
        vocab = Vocabulary(tokens=tuple(metadata["vocab"]))
    except (KeyError, TypeError, ValueError) as e:
        raise CorruptCheckpointError(f"{path}: invalid checkpoint metadata: {e}") from None

    if expected_config is not None and expected_config != configs.model:
        diff = "; ".join(config_mismatch(expected_config, configs.model))
        raise CheckpointShapeError(f"{path}: checkpoint was saved with a different model configuration ({diff})")

    shapes = tensor_shapes(configs.model)
    found = {name: tuple(t.shape) for name, t in tensors.items()}
    if found != shapes:
        bad = [n for n in shapes.keys() | found.keys() if shapes.get(n) != found.get(n)]
        raise CheckpointShapeError(f"{path}: tensor shapes disagree with the stored configuration: {sorted(bad)}")

    dtype = np.dtype(configs.model.precision)
    params = Parameters({name: tensors[name].astype(dtype) for name in shapes})
    return BertCheckpoint(params=params, configs=configs, vocab=vocab)
