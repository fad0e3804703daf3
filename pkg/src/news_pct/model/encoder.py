"""
BERT-style encoder for scalar regression.

Word + positional embeddings, N post-layer-norm encoder blocks (multi-head
scaled dot-product attention, GELU feed-forward), [CLS] pooling, dropout and a
linear head. Gradients are wired by hand for this fixed architecture.
"""

from math import sqrt
from dataclasses import dataclass
from collections.abc import Sequence

import numpy as np

from news_pct.numerics.rng import Rng
from news_pct.model.config import ModelConfig
from news_pct.model.params import Parameters, LAYER_TENSORS, layer_name
from news_pct.tokenizer.wordpiece import TokenSequence, stack_sequences
from news_pct.utils.errors import ShapeError
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

type Batch = tuple[np.ndarray, np.ndarray] | Sequence[TokenSequence]


def as_arrays(batch: Batch) -> tuple[np.ndarray, np.ndarray]:
    """Normalize a batch to (ids, mask), both [batch, seq_len]."""
    if isinstance(batch, tuple) and len(batch) == 2 and isinstance(batch[0], np.ndarray):
        ids, mask = batch
    else:
        ids, mask = stack_sequences(list(batch))  # type: ignore[arg-type]
    if ids.ndim != 2 or ids.shape != mask.shape:
        raise ShapeError(f"ids {ids.shape} and mask {mask.shape} must both be [batch, seq_len]")
    if ids.shape[0] == 0:
        raise ShapeError("batch is empty")
    return ids, mask


def _split_heads(t: np.ndarray, heads: int) -> np.ndarray:
    b, n, h = t.shape
    return t.reshape(b, n, heads, h // heads).transpose(0, 2, 1, 3)


def _merge_heads(t: np.ndarray) -> np.ndarray:
    b, heads, n, d = t.shape
    return t.transpose(0, 2, 1, 3).reshape(b, n, heads * d)


def _linear(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    return matmul(x, w) + b


def _linear_grad(x: np.ndarray, w: np.ndarray, dout: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    dx, dw = matmul_grad(x, w, dout)
    return dx, dw, dout.reshape(-1, dout.shape[-1]).sum(axis=0)


# embeddings


def embed(ids: np.ndarray, params: Parameters) -> np.ndarray:
    """word_embeddings[id] + positional_embeddings[position] for [batch, seq] (or [seq]) ids."""
    words = params["word_embeddings"]
    positions = params["positional_embeddings"]
    if ids.size and (ids.min() < 0 or ids.max() >= words.shape[0]):
        raise ShapeError(f"token id out of range [0, {words.shape[0]})")
    seq_len = ids.shape[-1]
    if seq_len > positions.shape[0]:
        raise ShapeError(f"sequence length {seq_len} exceeds max_len {positions.shape[0]}")
    return words[ids] + positions[:seq_len]


# attention


@dataclass
class AttentionCache:
    x: np.ndarray
    qh: np.ndarray
    kh: np.ndarray
    vh: np.ndarray
    probs: np.ndarray
    context: np.ndarray
    scale: float


def _attention_forward(
    x: np.ndarray, lp: dict[str, np.ndarray], mask: np.ndarray, num_heads: int
) -> tuple[np.ndarray, AttentionCache]:
    if mask.shape != x.shape[:2]:
        raise ShapeError(f"mask {mask.shape} does not match sequence shape {x.shape[:2]}")
    qh = _split_heads(_linear(x, lp["q_w"], lp["q_b"]), num_heads)
    kh = _split_heads(_linear(x, lp["k_w"], lp["k_b"]), num_heads)
    vh = _split_heads(_linear(x, lp["v_w"], lp["v_b"]), num_heads)
    scale = 1.0 / sqrt(qh.shape[-1])

    scores = matmul(qh, np.swapaxes(kh, -1, -2)) * scale
    probs = softmax(scores, mask=mask[:, None, None, :])
    context = _merge_heads(matmul(probs, vh))
    out = _linear(context, lp["o_w"], lp["o_b"])
    return out, AttentionCache(x=x, qh=qh, kh=kh, vh=vh, probs=probs, context=context, scale=scale)


def _attention_backward(
    dout: np.ndarray, lp: dict[str, np.ndarray], cache: AttentionCache
) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    heads = cache.qh.shape[1]
    grads: dict[str, np.ndarray] = {}

    dcontext, grads["o_w"], grads["o_b"] = _linear_grad(cache.context, lp["o_w"], dout)
    dprobs, dvh = matmul_grad(cache.probs, cache.vh, _split_heads(dcontext, heads))
    dscores = softmax_grad(cache.probs, dprobs) * cache.scale
    dqh, dkh_t = matmul_grad(cache.qh, np.swapaxes(cache.kh, -1, -2), dscores)
    dkh = np.swapaxes(dkh_t, -1, -2)

    dx = np.zeros_like(cache.x)
    for proj, dh in (("q", dqh), ("k", dkh), ("v", dvh)):
        dxp, grads[f"{proj}_w"], grads[f"{proj}_b"] = _linear_grad(cache.x, lp[f"{proj}_w"], _merge_heads(dh))
        dx += dxp
    return dx, grads


def attention(x: np.ndarray, layer_params: dict[str, np.ndarray], mask: np.ndarray, num_heads: int) -> np.ndarray:
    """Multi-head self-attention; masked keys (mask 0) receive zero weight.

    Accepts [seq, hidden] with a [seq] mask, or the batched forms.
    """
    if x.ndim == 2:
        return _attention_forward(x[None], layer_params, np.asarray(mask)[None], num_heads)[0][0]
    return _attention_forward(x, layer_params, np.asarray(mask), num_heads)[0]


# encoder block


@dataclass
class BlockCache:
    attention: AttentionCache
    attn_mask: np.ndarray
    r1: np.ndarray
    y: np.ndarray
    f1: np.ndarray
    g: np.ndarray
    ff_mask: np.ndarray
    r2: np.ndarray


def _block_forward(
    x: np.ndarray,
    lp: dict[str, np.ndarray],
    mask: np.ndarray,
    config: ModelConfig,
    rng: Rng | None,
    training: bool,
) -> tuple[np.ndarray, BlockCache]:
    a, attn_cache = _attention_forward(x, lp, mask, config.num_heads)
    a_drop, attn_mask = dropout(a, config.dropout_p, rng, training)
    r1 = x + a_drop
    y = layer_norm(r1, lp["ln1_g"], lp["ln1_b"])

    f1 = _linear(y, lp["ff1_w"], lp["ff1_b"])
    g = gelu(f1)
    f2 = _linear(g, lp["ff2_w"], lp["ff2_b"])
    f_drop, ff_mask = dropout(f2, config.dropout_p, rng, training)
    r2 = y + f_drop
    z = layer_norm(r2, lp["ln2_g"], lp["ln2_b"])
    return z, BlockCache(attn_cache, attn_mask, r1, y, f1, g, ff_mask, r2)


def _block_backward(
    dz: np.ndarray, lp: dict[str, np.ndarray], cache: BlockCache
) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    grads: dict[str, np.ndarray] = {}

    dr2, grads["ln2_g"], grads["ln2_b"] = layer_norm_grad(cache.r2, lp["ln2_g"], dz)
    df2 = dropout_grad(cache.ff_mask, dr2)
    dg, grads["ff2_w"], grads["ff2_b"] = _linear_grad(cache.g, lp["ff2_w"], df2)
    df1 = gelu_grad(cache.f1, dg)
    dy_ff, grads["ff1_w"], grads["ff1_b"] = _linear_grad(cache.y, lp["ff1_w"], df1)
    dy = dr2 + dy_ff

    dr1, grads["ln1_g"], grads["ln1_b"] = layer_norm_grad(cache.r1, lp["ln1_g"], dy)
    da = dropout_grad(cache.attn_mask, dr1)
    dx_attn, attn_grads = _attention_backward(da, lp, cache.attention)
    grads.update(attn_grads)
    return dr1 + dx_attn, grads


def encoder_block(
    x: np.ndarray,
    layer_params: dict[str, np.ndarray],
    mask: np.ndarray,
    config: ModelConfig,
    rng: Rng | None = None,
    training: bool = False,
) -> np.ndarray:
    """y = LN(x + Dropout(Attention(x))); z = LN(y + Dropout(FF_GELU(y)))."""
    if x.ndim == 2:
        return _block_forward(x[None], layer_params, np.asarray(mask)[None], config, rng, training)[0][0]
    return _block_forward(x, layer_params, np.asarray(mask), config, rng, training)[0]


# full model


@dataclass
class ForwardCache:
    ids: np.ndarray
    blocks: list[BlockCache]
    cls_drop: np.ndarray
    cls_mask: np.ndarray


def _forward(
    batch: Batch, params: Parameters, config: ModelConfig, rng: Rng | None, training: bool
) -> tuple[np.ndarray, ForwardCache]:
    ids, mask = as_arrays(batch)
    h = embed(ids, params)
    blocks: list[BlockCache] = []
    for i in range(config.num_layers):
        h, cache = _block_forward(h, params.layer(i), mask, config, rng, training)
        blocks.append(cache)

    cls_drop, cls_mask = dropout(h[:, 0, :], config.dropout_p, rng, training)
    preds = check_finite(_linear(cls_drop, params["head.weight"], params["head.bias"])[:, 0], "predictions")
    return preds, ForwardCache(ids=ids, blocks=blocks, cls_drop=cls_drop, cls_mask=cls_mask)


def forward(
    batch: Batch,
    params: Parameters,
    config: ModelConfig,
    rng: Rng | None = None,
    training: bool = False,
) -> np.ndarray:
    """One scalar prediction per sequence, read from the final [CLS] state."""
    return _forward(batch, params, config, rng, training)[0]


def predict(batch: Batch, params: Parameters, config: ModelConfig) -> np.ndarray:
    return forward(batch, params, config, rng=None, training=False)


def backward(
    batch: Batch,
    targets: np.ndarray | Sequence[float],
    params: Parameters,
    config: ModelConfig,
    rng: Rng | None = None,
    training: bool = False,
) -> tuple[dict[str, np.ndarray], float]:
    """Gradients of the MSE loss for every parameter tensor, plus the loss.

    Runs its own forward pass, so `rng` must be in the state the matching
    forward would have seen for the dropout masks to agree.
    """
    y = np.asarray(targets, dtype=np.dtype(config.precision))
    if y.shape != (batch[0].shape[0],):
        raise ShapeError(f"targets {y.shape} do not match a batch of {batch[0].shape[0]} sequences")
    preds, cache = _forward(batch, params, config, rng, training)

    n = preds.shape[0]
    residual = preds - y
    loss = float(np.mean(residual * residual))
    dpreds = (2.0 / n) * residual

    grads: dict[str, np.ndarray] = {}
    dcls_drop, grads["head.weight"], grads["head.bias"] = _linear_grad(
        cache.cls_drop, params["head.weight"], dpreds[:, None]
    )
    dcls = dropout_grad(cache.cls_mask, dcls_drop)

    word = params["word_embeddings"]
    dh = np.zeros(cache.ids.shape + (word.shape[1],), dtype=word.dtype)
    dh[:, 0, :] = dcls
    for i in reversed(range(config.num_layers)):
        dh, layer_grads = _block_backward(dh, params.layer(i), cache.blocks[i])
        for short in LAYER_TENSORS:
            grads[layer_name(i, short)] = layer_grads[short]

    dword = np.zeros_like(word)
    np.add.at(dword, cache.ids, dh)
    dpos = np.zeros_like(params["positional_embeddings"])
    dpos[: cache.ids.shape[1]] = dh.sum(axis=0)
    grads["word_embeddings"] = dword
    grads["positional_embeddings"] = dpos

    return {name: grads[name] for name in params}, loss
