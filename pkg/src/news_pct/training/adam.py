from dataclasses import dataclass
from collections.abc import Mapping

import numpy as np

from news_pct.training.config import TrainConfig
from news_pct.utils.errors import NonFiniteError, ShapeError


@dataclass(frozen=True)
class AdamState:
    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]
    t: int = 0

    @classmethod
    def fresh(cls, params: Mapping[str, np.ndarray]) -> "AdamState":
        return cls(
            m={k: np.zeros_like(p) for k, p in params.items()},
            v={k: np.zeros_like(p) for k, p in params.items()},
            t=0,
        )


def adam_step(
    params: Mapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: AdamState,
    config: TrainConfig,
) -> tuple[dict[str, np.ndarray], AdamState]:
    """One bias-corrected Adam update. Inputs are left untouched; new arrays are returned."""
    for name, p in params.items():
        g = grads.get(name)
        if g is None or g.shape != p.shape:
            raise ShapeError(f"gradient for '{name}' has shape {None if g is None else g.shape}, expected {p.shape}")
        if not np.all(np.isfinite(g)):
            raise NonFiniteError(name, "gradient")

    t = state.t + 1
    b1, b2 = config.beta1, config.beta2
    bc1 = 1.0 - b1**t
    bc2 = 1.0 - b2**t

    new_params: dict[str, np.ndarray] = {}
    new_m: dict[str, np.ndarray] = {}
    new_v: dict[str, np.ndarray] = {}
    for name, p in params.items():
        g = grads[name]
        m = b1 * state.m[name] + (1.0 - b1) * g
        v = b2 * state.v[name] + (1.0 - b2) * (g * g)
        m_hat = m / bc1
        v_hat = v / bc2
        new_params[name] = (p - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)).astype(p.dtype)
        new_m[name] = m
        new_v[name] = v
    return new_params, AdamState(m=new_m, v=new_v, t=t)
