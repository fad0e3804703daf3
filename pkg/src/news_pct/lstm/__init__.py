from news_pct.lstm.config import LSTM_CONFIG_DEFAULTS, LstmConfig
from news_pct.lstm.windows import WindowExample, build_windows, stack_windows
from news_pct.lstm.cell import (
    run_cells,
    lstm_forward,
    lstm_backward,
    init_lstm_params,
    lstm_tensor_shapes,
    lstm_backward_batch,
)
from news_pct.lstm.train import (
    train_lstm,
    evaluate_lstm,
    lstm_grad_check,
    predict_windows,
    load_lstm_checkpoint,
    save_lstm_checkpoint,
)

__all__ = [
    "LSTM_CONFIG_DEFAULTS",
    "LstmConfig",
    "WindowExample",
    "run_cells",
    "train_lstm",
    "lstm_forward",
    "build_windows",
    "lstm_backward",
    "stack_windows",
    "evaluate_lstm",
    "lstm_grad_check",
    "predict_windows",
    "init_lstm_params",
    "lstm_tensor_shapes",
    "lstm_backward_batch",
    "load_lstm_checkpoint",
    "save_lstm_checkpoint",
]
