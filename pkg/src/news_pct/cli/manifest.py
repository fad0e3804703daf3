from pathlib import Path
from logging import getLogger
from importlib.metadata import PackageNotFoundError, version as package_version

from pydantic import BaseModel, Field, ValidationError, field_validator

from news_pct.utils.hashing import compute_sha256, verify_sha256, validate_sha256
from news_pct.utils.errors import DatasetFormatError

LOGGER = getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def tool_version() -> str:
    try:
        return package_version("news-pct")
    except PackageNotFoundError:
        return "unknown"


class RunManifest(BaseModel):
    """Record of one command run: enough to rerun it and check the outputs byte for byte."""

    model_config = {"frozen": True}

    command: str
    argv: list[str]
    config: dict = Field(default_factory=dict)
    seed: int | None = None
    inputs: dict[str, str] = Field(default_factory=dict, description="path -> sha256")
    outputs: dict[str, str] = Field(default_factory=dict, description="path -> sha256")
    tool_version: str = Field(default_factory=tool_version)

    @field_validator("inputs", "outputs")
    def validate_checksums(cls, checksums: dict[str, str]) -> dict[str, str]:
        for path, digest in checksums.items():
            if not validate_sha256(digest):
                raise ValueError(f"Invalid SHA-256 checksum for {path}: {digest}")
        return checksums


def manifest_path(primary_output: str | Path) -> Path:
    primary_output = Path(primary_output)
    return primary_output.with_name(primary_output.name + MANIFEST_SUFFIX)


def checksums(paths: list[str | Path]) -> dict[str, str]:
    return {str(p): compute_sha256(p) for p in paths}


def write_manifest(
    command: str,
    argv: list[str],
    inputs: list[str | Path],
    outputs: list[str | Path],
    config: dict | None = None,
    seed: int | None = None,
) -> Path:
    """Write `<first output>.manifest.json` next to the command's primary output."""
    manifest = RunManifest(
        command=command,
        argv=list(argv),
        config=config or {},
        seed=seed,
        inputs=checksums(inputs),
        outputs=checksums(outputs),
    )
    path = manifest_path(outputs[0])
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    LOGGER.debug(f"Wrote run manifest {path}")
    return path


def load_manifest(path: str | Path) -> RunManifest:
    try:
        return RunManifest.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise DatasetFormatError(f"{path}: not a run manifest: {e.errors()[0]['msg']}") from None


def changed_files(recorded: dict[str, str]) -> list[str]:
    """Paths whose current sha256 differs from the recorded one (or that are gone)."""
    return [path for path, digest in recorded.items() if not verify_sha256(path, digest)]
