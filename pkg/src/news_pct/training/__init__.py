from news_pct.training.config import TRAIN_CONFIG_DEFAULTS, TrainConfig
from news_pct.training.loss import LossInput, mse, mse_loss
from news_pct.training.adam import AdamState, adam_step
from news_pct.training.loop import TrainResult, train, train_model, save_loss_history
from news_pct.training.grad_check import GradCheckReport, grad_check
from news_pct.training.checkpoint import (
    BertCheckpoint,
    CheckpointConfigs,
    checkpoint_arch,
    load_checkpoint,
    save_checkpoint,
)

__all__ = [
    "TRAIN_CONFIG_DEFAULTS",
    "AdamState",
    "BertCheckpoint",
    "CheckpointConfigs",
    "GradCheckReport",
    "LossInput",
    "TrainConfig",
    "TrainResult",
    "mse",
    "train",
    "mse_loss",
    "adam_step",
    "grad_check",
    "train_model",
    "checkpoint_arch",
    "load_checkpoint",
    "save_checkpoint",
    "save_loss_history",
]
