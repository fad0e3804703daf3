from dataclasses import dataclass
from collections.abc import Iterator

import numpy as np

from news_pct.numerics.rng import Rng
from news_pct.model.config import ModelConfig

# per-layer tensors, in checkpoint order
LAYER_TENSORS = (
    "q_w", "q_b", "k_w", "k_b", "v_w", "v_b", "o_w", "o_b",
    "ln1_g", "ln1_b",
    "ff1_w", "ff1_b", "ff2_w", "ff2_b",
    "ln2_g", "ln2_b",
)


def layer_name(index: int, short: str) -> str:
    return f"layers.{index}.{short}"


def tensor_shapes(config: ModelConfig) -> dict[str, tuple[int, ...]]:
    """Every trainable tensor with its shape, in the fixed checkpoint order."""
    h, f = config.hidden_dim, config.ff_dim
    layer = {
        "q_w": (h, h), "q_b": (h,), "k_w": (h, h), "k_b": (h,),
        "v_w": (h, h), "v_b": (h,), "o_w": (h, h), "o_b": (h,),
        "ln1_g": (h,), "ln1_b": (h,),
        "ff1_w": (h, f), "ff1_b": (f,), "ff2_w": (f, h), "ff2_b": (h,),
        "ln2_g": (h,), "ln2_b": (h,),
    }
    shapes: dict[str, tuple[int, ...]] = {
        "word_embeddings": (config.vocab_size, h),
        "positional_embeddings": (config.max_len, h),
    }
    for i in range(config.num_layers):
        for short in LAYER_TENSORS:
            shapes[layer_name(i, short)] = layer[short]
    shapes["head.weight"] = (h, 1)
    shapes["head.bias"] = (1,)
    return shapes


def parameter_count(config: ModelConfig) -> int:
    """Closed-form count: embeddings + N × per-layer + head."""
    v, h, f, n = config.vocab_size, config.hidden_dim, config.ff_dim, config.num_layers
    embeddings = v * h + config.max_len * h
    per_layer = 4 * (h * h + h) + 2 * (2 * h) + (h * f + f) + (f * h + h)
    head = h + 1
    return embeddings + n * per_layer + head


@dataclass
class Parameters:
    """Named trainable tensors. Treated as immutable: optimizers return new instances."""

    tensors: dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.tensors[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.tensors)

    def items(self):
        return self.tensors.items()

    def layer(self, index: int) -> dict[str, np.ndarray]:
        return {short: self.tensors[layer_name(index, short)] for short in LAYER_TENSORS}

    def count(self) -> int:
        return sum(int(t.size) for t in self.tensors.values())

    def copy(self) -> "Parameters":
        return Parameters({k: v.copy() for k, v in self.tensors.items()})

    def equals(self, other: "Parameters") -> bool:
        """Bit-exact comparison of names, shapes, dtypes and values."""
        if list(self.tensors) != list(other.tensors):
            return False
        return all(
            a.dtype == b.dtype and a.shape == b.shape and a.tobytes() == b.tobytes()
            for a, b in zip(self.tensors.values(), other.tensors.values())
        )


def _is_weight(name: str) -> bool:
    return name.endswith(("_w", "weight", "embeddings"))


def init_params(config: ModelConfig, rng: Rng) -> Parameters:
    """Truncated-normal weights (±2σ), zero biases and betas, unit gammas."""
    dtype = np.dtype(config.precision)
    tensors: dict[str, np.ndarray] = {}
    for name, shape in tensor_shapes(config).items():
        short = name.rsplit(".", 1)[-1]
        if _is_weight(name):
            value = rng.child(name).truncated_normal(shape, config.init_stddev)
        elif short in ("ln1_g", "ln2_g"):
            value = np.ones(shape)
        else:
            value = np.zeros(shape)
        tensors[name] = value.astype(dtype)
    return Parameters(tensors)


def zeros_like(params: Parameters) -> dict[str, np.ndarray]:
    return {name: np.zeros_like(t) for name, t in params.items()}
