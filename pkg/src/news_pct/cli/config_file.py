from typing import Any
from pathlib import Path
from logging import getLogger
from re import compile as re_compile

import tomlkit
from tomlkit.exceptions import TOMLKitError
from pydantic import BaseModel, Field, model_validator

from news_pct.model.config import MODEL_CONFIG_DEFAULTS, ModelConfig
from news_pct.training.config import TRAIN_CONFIG_DEFAULTS, TrainConfig
from news_pct.lstm.config import LSTM_CONFIG_DEFAULTS, LstmConfig
from news_pct.data.synthetic import SYNTH_CONFIG_DEFAULTS, SynthConfig
from news_pct.utils.errors import UsageError

LOGGER = getLogger(__name__)

SECTION_DEFAULTS: dict[str, dict[str, Any]] = {
    "model": MODEL_CONFIG_DEFAULTS,
    "train": TRAIN_CONFIG_DEFAULTS,
    "lstm": LSTM_CONFIG_DEFAULTS,
    "synth": SYNTH_CONFIG_DEFAULTS,
}

# sections a command reads; a bare key shared by several sections goes to the one listed here
COMMAND_SECTIONS: dict[str, tuple[str, ...]] = {
    "bert": ("model", "train"),
    "lstm": ("lstm", "train"),
    "synth": ("synth",),
}

# key = value where the value is not quoted, bracketed or braced; an optional trailing comment
BARE_VALUE_LINE = re_compile(r"^(\s*[A-Za-z_][\w-]*\s*=\s*)([^\"'\[{#\s][^#]*?)(\s*(?:#.*)?)$")


class ExperimentConfig(BaseModel):
    """Every setting a command can read from a config file, defaults materialized."""

    model_config = {"frozen": True}

    model: ModelConfig = Field(default_factory=ModelConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)
    lstm: dict[str, int] = Field(default_factory=lambda: dict(LSTM_CONFIG_DEFAULTS))
    synth: SynthConfig = Field(default_factory=SynthConfig)

    @model_validator(mode="after")
    def validate_lstm_section(self) -> "ExperimentConfig":
        self.lstm_config()
        return self

    def lstm_config(self) -> LstmConfig:
        return LstmConfig.model_validate({**self.lstm, "train": self.train})


def _is_toml_value(raw: str) -> bool:
    try:
        tomlkit.parse(f"v = {raw}")
    except TOMLKitError:
        return False
    return True


def quote_bare_strings(text: str) -> str:
    """Quote scalar values that are not TOML literals, so `kind = ar1` reads as the string "ar1"."""
    lines = []
    for line in text.splitlines():
        match = BARE_VALUE_LINE.match(line)
        if match and not _is_toml_value(match.group(2)):
            line = f"{match.group(1)}{tomlkit.string(match.group(2)).as_string()}{match.group(3)}"
        lines.append(line)
    return "\n".join(lines)


def _route_top_level(data: dict[str, Any], command: str | None) -> dict[str, dict[str, Any]]:
    """Place `key = value` lines outside any table into the section that owns the key.

    A key owned by several sections goes to the one the command reads; with no
    command, or when the command reads none or several of them, it is ambiguous.
    """
    sections: dict[str, dict[str, Any]] = {name: dict(data.get(name, {})) for name in SECTION_DEFAULTS}
    preferred = COMMAND_SECTIONS.get(command or "", ())
    for key, value in data.items():
        if key in SECTION_DEFAULTS:
            if not isinstance(value, dict):
                raise UsageError(f"'{key}' must be a table")
            continue
        owners = [name for name, defaults in SECTION_DEFAULTS.items() if key in defaults]
        if not owners:
            raise UsageError(f"unknown config key '{key}'")
        if len(owners) > 1:
            owners = [name for name in owners if name in preferred] or owners
        if len(owners) > 1:
            raise UsageError(f"config key '{key}' is ambiguous; put it under one of [{'], ['.join(owners)}]")
        sections[owners[0]][key] = value
    return sections


def parse_experiment_config(
    text: str, overrides: dict[str, dict[str, Any]] | None = None, command: str | None = None
) -> ExperimentConfig:
    """Parse a config file body.

    Accepts TOML tables as well as flat `key = value` lines, where unquoted
    words are read as strings. `command` is one of COMMAND_SECTIONS and decides
    where shared bare keys such as `seed` and `hidden_dim` go.
    """
    try:
        data = tomlkit.parse(quote_bare_strings(text)).unwrap()
    except TOMLKitError as e:
        raise UsageError(f"config file is not valid TOML: {e}") from None

    sections = _route_top_level(data, command)
    for section, values in (overrides or {}).items():
        sections[section].update({k: v for k, v in values.items() if v is not None})

    unknown = {f"{s}.{k}" for s, values in sections.items() for k in values if k not in SECTION_DEFAULTS[s]}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return ExperimentConfig.model_validate(
        {
            "model": {**MODEL_CONFIG_DEFAULTS, **sections["model"]},
            "train": {**TRAIN_CONFIG_DEFAULTS, **sections["train"]},
            "lstm": {**LSTM_CONFIG_DEFAULTS, **sections["lstm"]},
            "synth": {**SYNTH_CONFIG_DEFAULTS, **sections["synth"]},
        }
    )


def load_experiment_config(
    path: str | Path | None, overrides: dict[str, dict[str, Any]] | None = None, command: str | None = None
) -> ExperimentConfig:
    """Read a config file (or none, for all defaults) and apply flag overrides on top."""
    text = "" if path is None else Path(path).read_text(encoding="utf-8")
    config = parse_experiment_config(text, overrides, command)
    LOGGER.debug(f"Resolved {command or 'experiment'} configuration from {path or 'defaults'}")
    return config
