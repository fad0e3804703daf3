"""
Dense kernels and their vector-Jacobian products.

Forward kernels surface NaN/Inf as NonFiniteError instead of propagating them.
Gradient kernels take the forward inputs (or the mask/output they produced) as
context and check that its shape agrees with the upstream gradient.
"""

from math import pi, sqrt

import numpy as np

from news_pct.numerics.rng import Rng
from news_pct.utils.errors import NonFiniteError, ShapeError, UsageError

GELU_COEF = sqrt(2.0 / pi)
GELU_CUBIC = 0.044715
LAYER_NORM_EPS = 1e-5


def check_finite(x: np.ndarray, name: str) -> np.ndarray:
    if not np.all(np.isfinite(x)):
        bad = int(np.size(x) - np.count_nonzero(np.isfinite(x)))
        raise NonFiniteError(name, f"{bad} of {np.size(x)} entries")
    return x


def _require_same_shape(context: np.ndarray, upstream: np.ndarray, kernel: str) -> None:
    if context.shape != upstream.shape:
        raise ShapeError(f"{kernel}: context shape {context.shape} does not match upstream {upstream.shape}")


# matmul


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product over the last axis of `a` and the second-to-last axis of `b`; leading axes broadcast."""
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        raise ShapeError(f"matmul: cannot multiply {a.shape} by {b.shape}")
    return check_finite(np.matmul(a, b), "matmul")


def matmul_grad(a: np.ndarray, b: np.ndarray, dout: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    expected = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
    if dout.shape != expected:
        raise ShapeError(f"matmul_grad: upstream {dout.shape} does not match forward output {expected}")
    da = np.matmul(dout, np.swapaxes(b, -1, -2))
    db = np.matmul(np.swapaxes(a, -1, -2), dout)
    # reduce broadcast leading axes back onto the operand shapes
    while da.ndim > a.ndim:
        da = da.sum(axis=0)
    while db.ndim > b.ndim:
        db = db.sum(axis=0)
    return da, db


# softmax


def softmax(rows: np.ndarray, mask: np.ndarray | None = None) -> np.ndarray:
    """
    Row-wise softmax over the last axis with max subtraction.

    Entries where `mask` is 0 are treated as -inf and receive exactly zero weight.
    A row with every entry masked cannot be normalized and raises ShapeError.
    """
    check_finite(rows, "softmax input")
    if mask is None:
        shifted = rows - rows.max(axis=-1, keepdims=True)
        e = np.exp(shifted)
        return e / e.sum(axis=-1, keepdims=True)

    keep = np.broadcast_to(mask, rows.shape).astype(bool)
    if not keep.any(axis=-1).all():
        raise ShapeError("softmax: a row has every position masked")
    masked = np.where(keep, rows, -np.inf)
    shifted = masked - masked.max(axis=-1, keepdims=True)
    e = np.where(keep, np.exp(shifted), 0.0)
    return e / e.sum(axis=-1, keepdims=True)


def softmax_grad(y: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """VJP of softmax given its output `y`."""
    _require_same_shape(y, dy, "softmax_grad")
    return y * (dy - (dy * y).sum(axis=-1, keepdims=True))


# layer norm


def layer_norm(x: np.ndarray, gamma: np.ndarray, beta: np.ndarray, eps: float = LAYER_NORM_EPS) -> np.ndarray:
    h = x.shape[-1]
    if h < 1 or gamma.shape != (h,) or beta.shape != (h,):
        raise ShapeError(f"layer_norm: x {x.shape}, gamma {gamma.shape}, beta {beta.shape}")
    mu = x.mean(axis=-1, keepdims=True)
    var = ((x - mu) ** 2).mean(axis=-1, keepdims=True)
    x_hat = (x - mu) / np.sqrt(var + eps)
    return check_finite(x_hat * gamma + beta, "layer_norm")


def layer_norm_grad(
    x: np.ndarray, gamma: np.ndarray, dy: np.ndarray, eps: float = LAYER_NORM_EPS
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (dx, dgamma, dbeta)."""
    _require_same_shape(x, dy, "layer_norm_grad")
    h = x.shape[-1]
    mu = x.mean(axis=-1, keepdims=True)
    var = ((x - mu) ** 2).mean(axis=-1, keepdims=True)
    inv_std = 1.0 / np.sqrt(var + eps)
    x_hat = (x - mu) * inv_std

    reduce_axes = tuple(range(x.ndim - 1))
    dgamma = (dy * x_hat).sum(axis=reduce_axes)
    dbeta = dy.sum(axis=reduce_axes)

    dx_hat = dy * gamma
    dx = (inv_std / h) * (
        h * dx_hat - dx_hat.sum(axis=-1, keepdims=True) - x_hat * (dx_hat * x_hat).sum(axis=-1, keepdims=True)
    )
    return dx, dgamma, dbeta


# gelu (tanh approximation)


def gelu(x: np.ndarray) -> np.ndarray:
    check_finite(x, "gelu input")
    return 0.5 * x * (1.0 + np.tanh(GELU_COEF * (x + GELU_CUBIC * x**3)))


def gelu_grad(x: np.ndarray, dy: np.ndarray) -> np.ndarray:
    _require_same_shape(x, dy, "gelu_grad")
    t = np.tanh(GELU_COEF * (x + GELU_CUBIC * x**3))
    local = 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * GELU_COEF * (1.0 + 3.0 * GELU_CUBIC * x * x)
    return dy * local


# dropout (inverted)


def dropout(x: np.ndarray, p: float, rng: Rng | None, training: bool) -> tuple[np.ndarray, np.ndarray]:
    """
    Inverted dropout. Returns the output and the scale mask that produced it
    (zeros and 1/(1-p) in training, ones at inference).
    """
    if not 0.0 <= p < 1.0:
        raise ValueError(f"dropout probability must lie in [0, 1), got {p}")
    if not training or p == 0.0:
        return x, np.ones_like(x)
    if rng is None:
        raise UsageError("dropout in training mode needs an Rng")
    mask = rng.keep_mask(x.shape, 1.0 - p).astype(x.dtype) / (1.0 - p)
    return check_finite(x * mask, "dropout"), mask


def dropout_grad(mask: np.ndarray, dy: np.ndarray) -> np.ndarray:
    _require_same_shape(mask, dy, "dropout_grad")
    return dy * mask
