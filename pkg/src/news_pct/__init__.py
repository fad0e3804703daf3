from news_pct.data import SPLIT_SPEC_DEFAULTS, SYNTH_CONFIG_DEFAULTS, Dataset, NewsRecord, SplitSpec, SynthConfig
from news_pct.modality import VERSIONS, ModalityVersion
from news_pct.model import MODEL_CONFIG_DEFAULTS, ModelConfig
from news_pct.training import TRAIN_CONFIG_DEFAULTS, TrainConfig
from news_pct.lstm import LSTM_CONFIG_DEFAULTS, LstmConfig
from news_pct.utils import NewsPctError

__all__ = [
    "Dataset",
    "NewsRecord",
    "SplitSpec",
    "SynthConfig",
    "ModelConfig",
    "TrainConfig",
    "LstmConfig",
    "NewsPctError",
    "ModalityVersion",
    "VERSIONS",
    "SPLIT_SPEC_DEFAULTS",
    "SYNTH_CONFIG_DEFAULTS",
    "MODEL_CONFIG_DEFAULTS",
    "TRAIN_CONFIG_DEFAULTS",
    "LSTM_CONFIG_DEFAULTS",
]
