"""
LSTM recurrence and its backpropagation through time.

Gates are packed along the last axis in the order input, forget, candidate,
output: z_t = x_t·W_x + h_{t−1}·W_h + b, each block `hidden_dim` wide.
"""

from dataclasses import dataclass, field

import numpy as np

from news_pct.numerics.rng import Rng
from news_pct.model.params import Parameters
from news_pct.numerics.kernels import matmul, matmul_grad, check_finite
from news_pct.lstm.config import LstmConfig
from news_pct.lstm.windows import WindowExample
from news_pct.utils.errors import ShapeError

INPUT_WEIGHT = "lstm.input_weight"
HIDDEN_WEIGHT = "lstm.hidden_weight"
GATE_BIAS = "lstm.bias"
HEAD_WEIGHT = "head.weight"
HEAD_BIAS = "head.bias"


def lstm_tensor_shapes(config: LstmConfig) -> dict[str, tuple[int, ...]]:
    h = config.hidden_dim
    return {
        INPUT_WEIGHT: (1, 4 * h),
        HIDDEN_WEIGHT: (h, 4 * h),
        GATE_BIAS: (4 * h,),
        HEAD_WEIGHT: (h, 1),
        HEAD_BIAS: (1,),
    }


def init_lstm_params(config: LstmConfig, rng: Rng) -> Parameters:
    """Every tensor uniform in ±1/√hidden_dim."""
    bound = 1.0 / np.sqrt(config.hidden_dim)
    return Parameters(
        {name: rng.child(name).uniform(-bound, bound, shape) for name, shape in lstm_tensor_shapes(config).items()}
    )


def sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


@dataclass
class StepCache:
    x: np.ndarray
    h_prev: np.ndarray
    c_prev: np.ndarray
    i: np.ndarray
    f: np.ndarray
    g: np.ndarray
    o: np.ndarray
    tanh_c: np.ndarray


@dataclass
class LstmCache:
    steps: list[StepCache] = field(default_factory=list)
    h_last: np.ndarray | None = None


def run_cells(inputs: np.ndarray, params: Parameters) -> tuple[np.ndarray, LstmCache]:
    """Predictions [batch] for inputs [batch, k], with the per-step gate values."""
    if inputs.ndim != 2:
        raise ShapeError(f"inputs must be [batch, window], got {inputs.shape}")
    w_x, w_h, b = params[INPUT_WEIGHT], params[HIDDEN_WEIGHT], params[GATE_BIAS]
    hidden = w_h.shape[0]
    if w_x.shape != (1, 4 * hidden) or b.shape != (4 * hidden,):
        raise ShapeError(f"LSTM tensors disagree: input {w_x.shape}, hidden {w_h.shape}, bias {b.shape}")

    batch = inputs.shape[0]
    h = np.zeros((batch, hidden))
    c = np.zeros((batch, hidden))
    cache = LstmCache()
    for t in range(inputs.shape[1]):
        x = inputs[:, t : t + 1]
        z = matmul(x, w_x) + matmul(h, w_h) + b
        i = sigmoid(z[:, :hidden])
        f = sigmoid(z[:, hidden : 2 * hidden])
        g = np.tanh(z[:, 2 * hidden : 3 * hidden])
        o = sigmoid(z[:, 3 * hidden :])
        c_next = f * c + i * g
        tanh_c = np.tanh(c_next)
        cache.steps.append(StepCache(x=x, h_prev=h, c_prev=c, i=i, f=f, g=g, o=o, tanh_c=tanh_c))
        h, c = o * tanh_c, c_next

    cache.h_last = h
    preds = matmul(h, params[HEAD_WEIGHT])[:, 0] + params[HEAD_BIAS][0]
    return check_finite(preds, "lstm predictions"), cache


def lstm_forward(window: WindowExample | np.ndarray, params: Parameters) -> float:
    inputs = np.asarray(window.inputs if isinstance(window, WindowExample) else window, dtype=np.float64)
    return float(run_cells(inputs[None, :], params)[0][0])


def lstm_backward_batch(
    inputs: np.ndarray, targets: np.ndarray, params: Parameters
) -> tuple[dict[str, np.ndarray], float]:
    """MSE-loss gradients for every LSTM tensor over a batch of windows, plus the loss."""
    preds, cache = run_cells(inputs, params)
    y = np.asarray(targets, dtype=np.float64)
    if y.shape != preds.shape:
        raise ShapeError(f"targets {y.shape} do not match predictions {preds.shape}")
    n = preds.shape[0]
    residual = preds - y
    loss = float(np.mean(residual * residual))
    dpred = ((2.0 / n) * residual)[:, None]

    w_x, w_h = params[INPUT_WEIGHT], params[HIDDEN_WEIGHT]
    dh, dhead_w = matmul_grad(cache.h_last, params[HEAD_WEIGHT], dpred)
    grads = {
        INPUT_WEIGHT: np.zeros_like(w_x),
        HIDDEN_WEIGHT: np.zeros_like(w_h),
        GATE_BIAS: np.zeros_like(params[GATE_BIAS]),
        HEAD_WEIGHT: dhead_w,
        HEAD_BIAS: dpred.sum(axis=0),
    }

    dc_next = np.zeros_like(dh)
    for step in reversed(cache.steps):
        do = dh * step.tanh_c
        dc = dc_next + dh * step.o * (1.0 - step.tanh_c**2)
        di = dc * step.g
        dg = dc * step.i
        df = dc * step.c_prev
        dc_next = dc * step.f

        dz = np.concatenate(
            [
                di * step.i * (1.0 - step.i),
                df * step.f * (1.0 - step.f),
                dg * (1.0 - step.g**2),
                do * step.o * (1.0 - step.o),
            ],
            axis=1,
        )
        _, dw_x = matmul_grad(step.x, w_x, dz)
        dh, dw_h = matmul_grad(step.h_prev, w_h, dz)
        grads[INPUT_WEIGHT] += dw_x
        grads[HIDDEN_WEIGHT] += dw_h
        grads[GATE_BIAS] += dz.sum(axis=0)

    return {name: grads[name] for name in params}, loss


def lstm_backward(window: WindowExample, target: float, params: Parameters) -> dict[str, np.ndarray]:
    """BPTT gradients of the squared error on one window."""
    inputs = np.asarray(window.inputs, dtype=np.float64)[None, :]
    return lstm_backward_batch(inputs, np.array([target], dtype=np.float64), params)[0]
