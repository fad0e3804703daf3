import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from news_pct.numerics.rng import Rng
from news_pct.model.params import Parameters
from news_pct.lstm import (
    LstmConfig,
    WindowExample,
    init_lstm_params,
    lstm_backward,
    lstm_backward_batch,
    lstm_forward,
    lstm_grad_check,
    lstm_tensor_shapes,
    run_cells,
)
from news_pct.utils.errors import ShapeError


def window(*values: float) -> WindowExample:
    return WindowExample(inputs=tuple(values), target=0.0, record_ref=0, ticker="ACME")


def zero_params(config: LstmConfig) -> Parameters:
    return Parameters({name: np.zeros(shape) for name, shape in lstm_tensor_shapes(config).items()})


def sig(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


@pytest.fixture
def config() -> LstmConfig:
    return LstmConfig(window=3, hidden_dim=4)


@pytest.fixture
def params(config) -> Parameters:
    return init_lstm_params(config, Rng(0, "init"))


def test_tensor_shapes(config):
    assert lstm_tensor_shapes(config) == {
        "lstm.input_weight": (1, 16),
        "lstm.hidden_weight": (4, 16),
        "lstm.bias": (16,),
        "head.weight": (4, 1),
        "head.bias": (1,),
    }


def test_init_bounds(config, params):
    bound = 1.0 / math.sqrt(config.hidden_dim)
    assert all(np.abs(t).max() <= bound for _, t in params.items())
    assert init_lstm_params(config, Rng(0, "init")).equals(params)


def test_zero_weights_predict_head_bias(config):
    params = zero_params(config)
    params.tensors["head.bias"][:] = 0.7
    assert lstm_forward(window(1.0, -2.0, 3.0), params) == pytest.approx(0.7)


def test_single_step_two_unit_cell_by_hand():
    config = LstmConfig(window=1, hidden_dim=2)
    params = zero_params(config)
    # gate blocks i, f, g, o, two units each
    params.tensors["lstm.input_weight"][0] = [0.5, -0.3, 0.1, 0.2, 0.4, -0.6, 0.3, 0.9]
    params.tensors["lstm.bias"][:] = [0.1, 0.0, -0.2, 0.3, 0.05, 0.1, -0.1, 0.2]
    params.tensors["head.weight"][:, 0] = [1.5, -0.5]
    params.tensors["head.bias"][0] = 0.25
    x = 2.0
    wx, b = params["lstm.input_weight"][0], params["lstm.bias"]

    expected = 0.25
    for unit, w_head in enumerate([1.5, -0.5]):
        i = sig(wx[unit] * x + b[unit])
        g = math.tanh(wx[4 + unit] * x + b[4 + unit])
        o = sig(wx[6 + unit] * x + b[6 + unit])
        # c_0 = 0, so the forget gate drops out
        h = o * math.tanh(i * g)
        expected += w_head * h
    assert lstm_forward(window(x), params) == pytest.approx(expected, abs=1e-12)


def test_gates_stay_in_open_interval(params):
    _, cache = run_cells(Rng(1).normal(0.0, 3.0, (5, 3)), params)
    for step in cache.steps:
        for gate in (step.i, step.f, step.o):
            assert ((gate > 0) & (gate < 1)).all()
        assert (np.abs(step.g) < 1).all()


def test_batched_and_single_forward_agree(params):
    inputs = Rng(2).normal(size=(4, 3))
    preds, _ = run_cells(inputs, params)
    for row, pred in zip(inputs, preds):
        assert lstm_forward(row, params) == pytest.approx(pred, abs=1e-14)


def test_inputs_must_be_two_dimensional(params):
    with pytest.raises(ShapeError):
        run_cells(np.zeros(3), params)


def test_grad_check_micro_lstm():
    report = lstm_grad_check(hidden_dim=4, window=3)
    assert report.max_error <= 1e-3, report.summary()


@settings(max_examples=15, deadline=None)
@given(
    hidden=st.integers(min_value=1, max_value=5),
    k=st.integers(min_value=1, max_value=4),
    batch=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_grad_check_across_micro_configs(hidden, k, batch, seed):
    assert lstm_grad_check(hidden_dim=hidden, window=k, batch=batch, seed=seed).passed


def test_perfect_prediction_has_zero_gradients(params):
    w = window(0.3, -0.1, 0.8)
    target = lstm_forward(w, params)
    grads = lstm_backward(w, target, params)
    assert all(np.abs(g).max() <= 1e-12 for g in grads.values())


def test_zero_input_gives_zero_input_weight_gradient(params):
    grads = lstm_backward(window(0.0, 0.0, 0.0), 1.0, params)
    assert (grads["lstm.input_weight"] == 0.0).all()
    assert np.abs(grads["head.bias"]).max() > 0


def test_batch_gradients_average_single_window_gradients(params):
    inputs = Rng(3).normal(size=(3, 3))
    targets = np.array([0.5, -1.0, 0.2])
    batch_grads, _ = lstm_backward_batch(inputs, targets, params)
    singles = [lstm_backward(window(*row), t, params) for row, t in zip(inputs, targets)]
    for name in batch_grads:
        assert batch_grads[name] == pytest.approx(np.mean([s[name] for s in singles], axis=0), abs=1e-12)
