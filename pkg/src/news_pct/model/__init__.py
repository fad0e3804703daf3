from news_pct.model.config import MODEL_CONFIG_DEFAULTS, ModelConfig
from news_pct.model.params import Parameters, init_params, tensor_shapes, parameter_count
from news_pct.model.encoder import embed, forward, predict, backward, attention, encoder_block

__all__ = [
    "MODEL_CONFIG_DEFAULTS",
    "ModelConfig",
    "Parameters",
    "embed",
    "forward",
    "predict",
    "backward",
    "attention",
    "init_params",
    "encoder_block",
    "tensor_shapes",
    "parameter_count",
]
