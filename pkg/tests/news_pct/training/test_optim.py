import numpy as np
import pytest

from news_pct.training import AdamState, LossInput, TrainConfig, adam_step, mse, mse_loss
from news_pct.utils.errors import NonFiniteError, ShapeError


# --- loss ---
@pytest.mark.parametrize(
    "preds, targets, expected",
    [
        ([1.0, 2.0], [2.0, 4.0], 2.5),
        ([0.0], [2.0], 4.0),
        ([1.5, -3.0, 0.25], [1.5, -3.0, 0.25], 0.0),
    ],
)
def test_mse_examples(preds, targets, expected):
    assert mse(preds, targets) == pytest.approx(expected)


def test_mse_length_mismatch():
    with pytest.raises(ShapeError):
        mse([1.0, 2.0], [1.0])


def test_mse_empty():
    with pytest.raises(ShapeError):
        mse([], [])


def test_loss_input_validates():
    assert mse_loss(LossInput(predictions=[1.0, 2.0], targets=[2.0, 4.0])) == pytest.approx(2.5)
    with pytest.raises(ValueError):
        LossInput(predictions=[1.0], targets=[])


# --- adam ---
@pytest.fixture
def config() -> TrainConfig:
    return TrainConfig(learning_rate=1e-2)


@pytest.mark.parametrize("g", [1e-3, 1.0, 1e3, -1.0])
def test_first_step_moves_by_learning_rate(config, g):
    params = {"w": np.array([0.5])}
    new, state = adam_step(params, {"w": np.array([g])}, AdamState.fresh(params), config)
    assert params["w"][0] - new["w"][0] == pytest.approx(np.sign(g) * config.learning_rate, rel=1e-4)
    assert state.t == 1


def test_zero_gradient_leaves_params_unchanged(config):
    params = {"w": np.array([1.0, -2.0, 3.0])}
    new, _ = adam_step(params, {"w": np.zeros(3)}, AdamState.fresh(params), config)
    assert (new["w"] == params["w"]).all()


def test_zero_learning_rate_is_identity():
    params = {"w": np.array([[1.0, 2.0]]), "b": np.array([0.5])}
    grads = {"w": np.array([[3.0, -4.0]]), "b": np.array([7.0])}
    config = TrainConfig(learning_rate=0.0)
    state = AdamState.fresh(params)
    for _ in range(3):
        new, state = adam_step(params, grads, state, config)
        assert all((new[k] == params[k]).all() for k in params)


def test_inputs_are_not_mutated(config):
    params = {"w": np.array([1.0])}
    state = AdamState.fresh(params)
    adam_step(params, {"w": np.array([1.0])}, state, config)
    assert params["w"][0] == 1.0
    assert state.m["w"][0] == 0.0 and state.t == 0


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_non_finite_gradient_is_rejected(config, bad):
    params = {"w": np.array([1.0, 2.0])}
    with pytest.raises(NonFiniteError):
        adam_step(params, {"w": np.array([0.1, bad])}, AdamState.fresh(params), config)


def test_gradient_shape_must_match(config):
    params = {"w": np.array([1.0, 2.0])}
    with pytest.raises(ShapeError):
        adam_step(params, {"w": np.array([1.0])}, AdamState.fresh(params), config)
    with pytest.raises(ShapeError):
        adam_step(params, {}, AdamState.fresh(params), config)


def test_constant_gradient_keeps_unit_steps(config):
    params = {"w": np.array([0.0])}
    state = AdamState.fresh(params)
    for _ in range(5):
        params, state = adam_step(params, {"w": np.array([2.0])}, state, config)
    # bias correction makes every step exactly lr for a constant gradient
    assert params["w"][0] == pytest.approx(-5 * config.learning_rate, rel=1e-6)


def test_defaults():
    config = TrainConfig()
    assert (config.learning_rate, config.beta1, config.beta2, config.epsilon) == (3e-4, 0.9, 0.999, 1e-8)
    assert config.batch_size == 32
