from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

from news_pct.constants import DEFAULT_VOCAB_SIZE

MODEL_CONFIG_DEFAULTS: dict[str, Any] = {
    "vocab_size": DEFAULT_VOCAB_SIZE,
    "hidden_dim": 128,
    "num_layers": 2,
    "num_heads": 2,
    "ff_dim": 512,
    "max_len": 128,
    "dropout_p": 0.1,
    "init_stddev": 0.02,
    "precision": "float64",
}


class ModelConfig(BaseModel):
    """Encoder geometry; the defaults are the BERT-Tiny shape."""

    model_config = {"frozen": True}

    vocab_size: int = Field(default=MODEL_CONFIG_DEFAULTS["vocab_size"], ge=5)
    hidden_dim: int = Field(default=MODEL_CONFIG_DEFAULTS["hidden_dim"], ge=1)
    num_layers: int = Field(default=MODEL_CONFIG_DEFAULTS["num_layers"], ge=1, description="encoder blocks (N)")
    num_heads: int = Field(default=MODEL_CONFIG_DEFAULTS["num_heads"], ge=1)
    ff_dim: int = Field(default=MODEL_CONFIG_DEFAULTS["ff_dim"], ge=1)
    max_len: int = Field(default=MODEL_CONFIG_DEFAULTS["max_len"], ge=2)
    dropout_p: float = Field(default=MODEL_CONFIG_DEFAULTS["dropout_p"], ge=0.0, lt=1.0)
    init_stddev: float = Field(default=MODEL_CONFIG_DEFAULTS["init_stddev"], gt=0.0)
    precision: Literal["float64", "float32"] = MODEL_CONFIG_DEFAULTS["precision"]

    @model_validator(mode="after")
    def validate_heads_divide_hidden(self) -> "ModelConfig":
        if self.hidden_dim % self.num_heads:
            raise ValueError(f"hidden_dim {self.hidden_dim} is not divisible by num_heads {self.num_heads}")
        return self

    @property
    def head_dim(self) -> int:
        return self.hidden_dim // self.num_heads
