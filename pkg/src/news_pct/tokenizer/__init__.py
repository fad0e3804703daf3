from news_pct.tokenizer.wordpiece import (
    TokenSequence,
    encode,
    tokenize,
    encode_batch,
    basic_tokenize,
    stack_sequences,
    wordpiece_segment,
)
from news_pct.tokenizer.vocab import Vocabulary, load_vocab, save_vocab, build_vocab, vocab_from_tokens

__all__ = [
    "TokenSequence",
    "Vocabulary",
    "encode",
    "tokenize",
    "load_vocab",
    "save_vocab",
    "build_vocab",
    "encode_batch",
    "basic_tokenize",
    "stack_sequences",
    "vocab_from_tokens",
    "wordpiece_segment",
]
