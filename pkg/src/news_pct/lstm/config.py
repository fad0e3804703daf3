from typing import Any

from pydantic import BaseModel, Field

from news_pct.training.config import TrainConfig

LSTM_CONFIG_DEFAULTS: dict[str, Any] = {
    "window": 5,
    "hidden_dim": 64,
}


class LstmConfig(BaseModel):
    """Single-layer LSTM over the last `window` percent changes of one ticker."""

    model_config = {"frozen": True}

    window: int = Field(default=LSTM_CONFIG_DEFAULTS["window"], ge=1)
    hidden_dim: int = Field(default=LSTM_CONFIG_DEFAULTS["hidden_dim"], ge=1)
    train: TrainConfig = Field(default_factory=TrainConfig)
