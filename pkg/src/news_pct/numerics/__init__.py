from news_pct.numerics.rng import Rng
from news_pct.numerics.kernels import (
    gelu,
    matmul,
    dropout,
    softmax,
    gelu_grad,
    layer_norm,
    matmul_grad,
    check_finite,
    dropout_grad,
    softmax_grad,
    layer_norm_grad,
)

__all__ = [
    "Rng",
    "gelu",
    "matmul",
    "dropout",
    "softmax",
    "gelu_grad",
    "layer_norm",
    "matmul_grad",
    "check_finite",
    "dropout_grad",
    "softmax_grad",
    "layer_norm_grad",
]
