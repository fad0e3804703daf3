from typing import Any

from pydantic import BaseModel, Field

from news_pct.numerics.rng import MAX_SEED

TRAIN_CONFIG_DEFAULTS: dict[str, Any] = {
    "learning_rate": 3e-4,
    "beta1": 0.9,
    "beta2": 0.999,
    "epsilon": 1e-8,
    "batch_size": 32,
    "epochs": 3,
    "seed": 0,
    "shuffle_each_epoch": True,
}


class TrainConfig(BaseModel):
    """Adam and mini-batch settings. No schedule, no warmup: the rate stays constant."""

    model_config = {"frozen": True}

    learning_rate: float = Field(default=TRAIN_CONFIG_DEFAULTS["learning_rate"], ge=0.0, allow_inf_nan=False)
    beta1: float = Field(default=TRAIN_CONFIG_DEFAULTS["beta1"], ge=0.0, lt=1.0)
    beta2: float = Field(default=TRAIN_CONFIG_DEFAULTS["beta2"], ge=0.0, lt=1.0)
    epsilon: float = Field(default=TRAIN_CONFIG_DEFAULTS["epsilon"], gt=0.0)
    batch_size: int = Field(default=TRAIN_CONFIG_DEFAULTS["batch_size"], ge=1)
    epochs: int = Field(default=TRAIN_CONFIG_DEFAULTS["epochs"], ge=0)
    seed: int = Field(default=TRAIN_CONFIG_DEFAULTS["seed"], ge=0, le=MAX_SEED)
    shuffle_each_epoch: bool = TRAIN_CONFIG_DEFAULTS["shuffle_each_epoch"]
