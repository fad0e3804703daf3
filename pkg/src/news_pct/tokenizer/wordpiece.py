from __future__ import annotations

from re import compile as re_compile
from dataclasses import dataclass
from typing import TYPE_CHECKING
from collections.abc import Sequence

import numpy as np

from news_pct.constants import (
    CLS_ID,
    PAD_ID,
    SEP_ID,
    UNK_TOKEN,
    MAX_CHARS_PER_WORD,
    CONTINUATION_PREFIX,
)

if TYPE_CHECKING:
    from news_pct.tokenizer.vocab import Vocabulary

# a run of word characters, or a single punctuation/symbol character
WORD_OR_PUNCT = re_compile(r"\w+|[^\w\s]")


@dataclass(frozen=True)
class TokenSequence:
    ids: np.ndarray
    mask: np.ndarray
    true_length: int

    @property
    def max_len(self) -> int:
        return int(self.ids.shape[0])


def basic_tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, keep punctuation as one-character tokens."""
    return WORD_OR_PUNCT.findall(text.lower())


def wordpiece_segment(word: str, vocab: Vocabulary) -> list[str]:
    """
    Greedy longest-match-first segmentation of one word.

    For example, with "un" and "##happy" in the vocabulary, "unhappy" becomes
    ["un", "##happy"]. A word with no complete segmentation becomes [UNK].
    """
    if len(word) > MAX_CHARS_PER_WORD:
        return [UNK_TOKEN]

    pieces: list[str] = []
    start = 0
    while start < len(word):
        end = len(word)
        current = None
        while start < end:
            piece = word[start:end]
            if start > 0:
                piece = CONTINUATION_PREFIX + piece
            if piece in vocab:
                current = piece
                break
            end -= 1
        if current is None:
            return [UNK_TOKEN]
        pieces.append(current)
        start = end
    return pieces


def tokenize(text: str, vocab: Vocabulary) -> list[str]:
    pieces: list[str] = []
    for word in basic_tokenize(text):
        pieces.extend(wordpiece_segment(word, vocab))
    return pieces


def encode(text: str, vocab: Vocabulary, max_len: int) -> TokenSequence:
    """[CLS] + pieces + [SEP], truncated to max_len keeping the final [SEP], then padded."""
    if max_len < 2:
        raise ValueError(f"max_len must be at least 2, got {max_len}")

    piece_ids = [vocab.id_of(p) for p in tokenize(text, vocab)][: max_len - 2]
    seq = [CLS_ID, *piece_ids, SEP_ID]
    true_length = len(seq)

    ids = np.full(max_len, PAD_ID, dtype=np.int64)
    ids[:true_length] = seq
    mask = np.zeros(max_len, dtype=np.int64)
    mask[:true_length] = 1
    return TokenSequence(ids=ids, mask=mask, true_length=true_length)


def encode_batch(texts: Sequence[str], vocab: Vocabulary, max_len: int) -> tuple[np.ndarray, np.ndarray]:
    """Encode texts and stack them into (ids, mask) arrays of shape [batch, max_len]."""
    seqs = [encode(t, vocab, max_len) for t in texts]
    return stack_sequences(seqs)


def stack_sequences(seqs: Sequence[TokenSequence]) -> tuple[np.ndarray, np.ndarray]:
    if not seqs:
        raise ValueError("cannot stack an empty batch")
    return np.stack([s.ids for s in seqs]), np.stack([s.mask for s in seqs])
