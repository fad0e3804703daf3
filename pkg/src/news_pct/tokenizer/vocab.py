from pathlib import Path
from logging import getLogger
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from news_pct.constants import (
    UNK_ID,
    MIN_VOCAB_SIZE,
    RESERVED_TOKENS,
    CONTINUATION_PREFIX,
)
from news_pct.utils.errors import UsageError, DatasetFormatError
from news_pct.tokenizer.wordpiece import basic_tokenize

LOGGER = getLogger(__name__)

# shortest suffix worth a dedicated "##" piece; single characters are always present
MIN_SUFFIX_LEN = 2


@dataclass(frozen=True)
class Vocabulary:
    """Dense token table: id i is tokens[i]; ids 0..3 are [PAD], [UNK], [CLS], [SEP]."""

    tokens: tuple[str, ...]
    token_to_id: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if tuple(self.tokens[: len(RESERVED_TOKENS)]) != RESERVED_TOKENS:
            raise ValueError(f"vocabulary must start with {', '.join(RESERVED_TOKENS)}")
        mapping: dict[str, int] = {}
        for i, token in enumerate(self.tokens):
            if token in mapping:
                raise ValueError(f"duplicate token {token!r} at ids {mapping[token]} and {i}")
            mapping[token] = i
        object.__setattr__(self, "token_to_id", mapping)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: object) -> bool:
        return token in self.token_to_id

    def id_of(self, token: str) -> int:
        return self.token_to_id.get(token, UNK_ID)


def _ranked_candidates(words: Counter[str]) -> list[tuple[int, str]]:
    counts: Counter[str] = Counter()
    for word, freq in words.items():
        if len(word) > 1:
            counts[word] += freq
        for start in range(1, len(word) - MIN_SUFFIX_LEN + 1):
            counts[CONTINUATION_PREFIX + word[start:]] += freq
    return sorted(((-freq, token) for token, freq in counts.items()))


def build_vocab(corpus: Sequence[str], target_size: int) -> Vocabulary:
    """Build a WordPiece vocabulary from composed input texts.

    The table holds the reserved tokens, every character seen (as a plain piece
    and a "##" continuation so any seen word can be segmented), then the most
    frequent whole words and "##" suffixes until `target_size` entries.
    Frequency ties are broken lexicographically. The character alphabet is
    always kept whole, so a corpus with a huge alphabet can exceed target_size.
    """
    if not corpus:
        raise UsageError("cannot build a vocabulary from an empty corpus")
    if target_size < MIN_VOCAB_SIZE:
        raise UsageError(f"target_size must be at least {MIN_VOCAB_SIZE}, got {target_size}")

    words: Counter[str] = Counter()
    for text in corpus:
        words.update(basic_tokenize(text))

    chars = sorted({ch for word in words for ch in word})
    tokens: list[str] = list(RESERVED_TOKENS)
    tokens += chars
    tokens += [CONTINUATION_PREFIX + ch for ch in chars]
    seen = set(tokens)

    for _, token in _ranked_candidates(words):
        if len(tokens) >= target_size:
            break
        if token not in seen:
            tokens.append(token)
            seen.add(token)

    LOGGER.info(f"Built vocabulary of {len(tokens)} tokens from {len(corpus)} texts ({len(words)} distinct words)")
    return Vocabulary(tokens=tuple(tokens))


def save_vocab(vocab: Vocabulary, path: str | Path) -> Path:
    """One token per line; the line number is the id."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{token}\n" for token in vocab.tokens), encoding="utf-8")
    return path


def load_vocab(path: str | Path) -> Vocabulary:
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    try:
        return Vocabulary(tokens=tuple(lines))
    except ValueError as e:
        raise DatasetFormatError(f"{path}: {e}") from None


def vocab_from_tokens(tokens: Iterable[str]) -> Vocabulary:
    """Reserved tokens followed by `tokens` in the given order (duplicates dropped)."""
    ordered = list(RESERVED_TOKENS)
    for token in tokens:
        if token not in ordered:
            ordered.append(token)
    return Vocabulary(tokens=tuple(ordered))
