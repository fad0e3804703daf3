from re import match
from pathlib import Path
from hashlib import sha256
from logging import getLogger

from news_pct.__main__ import is_verbose

CHUNK_SIZE = 8192
LOGGER = getLogger(__name__)


def compute_sha256(for_file_path: str | Path) -> str:
    """
    Compute the SHA-256 hash of a file.

    Args:
        for_file_path: Path to the file.

    Returns:
        The SHA-256 hash as a hexadecimal string.
    """
    hash_sha256 = sha256()
    try:
        with open(for_file_path, "rb") as f:
            while chunk := f.read(CHUNK_SIZE):
                hash_sha256.update(chunk)
    except FileNotFoundError:
        LOGGER.error(f"File not found: {for_file_path}")
        raise
    if is_verbose():
        LOGGER.info(f"SHA-256 for {for_file_path}: {hash_sha256.hexdigest()}")
    return hash_sha256.hexdigest()


def verify_sha256(for_file_path: str | Path, expected_hash: str) -> bool:
    """
    Verify the SHA-256 hash of a file against an expected hash.

    Returns:
        True if the computed hash matches the expected hash, False otherwise.
    """
    try:
        computed_hash = compute_sha256(for_file_path)
    except OSError as e:
        LOGGER.error(f"Error verifying SHA-256 for {for_file_path}: {e}")
        return False
    if computed_hash.lower() == expected_hash.lower():
        return True
    LOGGER.warning(f"Hash mismatch for {for_file_path}: expected {expected_hash}, got {computed_hash}")
    return False


def validate_sha256(digest: str) -> bool:
    """Validates the SHA-256 checksum format."""
    return bool(match(r"^[a-fA-F0-9]{64}$", digest))


def stream_key(label: str) -> int:
    """64-bit integer derived from a label, used to name random sub-streams."""
    return int.from_bytes(sha256(label.encode("utf-8")).digest()[:8], "little")
