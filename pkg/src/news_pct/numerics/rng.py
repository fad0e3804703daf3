import numpy as np

from news_pct.utils.hashing import stream_key

MAX_SEED = 2**64 - 1


class Rng:
    """
    Seedable random source with named, independent sub-streams.

    A stream is identified by (seed, label); two Rng objects built from the same
    pair produce the same draws in the same order. `child` derives a new
    independent stream without consuming draws from the parent.
    """

    def __init__(self, seed: int, stream: str = "root") -> None:
        if not 0 <= seed <= MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.stream = stream
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(stream_key(stream),))
        self._gen = np.random.Generator(np.random.PCG64(sequence))

    def child(self, name: str) -> "Rng":
        return Rng(self.seed, f"{self.stream}/{name}")

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, stream={self.stream!r})"

    def normal(self, loc: float = 0.0, scale: float = 1.0, size: int | tuple[int, ...] | None = None):
        return self._gen.normal(loc, scale, size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size: int | tuple[int, ...] | None = None):
        return self._gen.uniform(low, high, size)

    def integers(self, low: int, high: int, size: int | tuple[int, ...] | None = None):
        return self._gen.integers(low, high, size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def choice(self, options: list, size: int | None = None):
        idx = self._gen.integers(0, len(options), size)
        if size is None:
            return options[int(idx)]
        return [options[int(i)] for i in idx]

    def keep_mask(self, shape: tuple[int, ...], keep_prob: float) -> np.ndarray:
        """Bernoulli(keep_prob) mask as float64 zeros and ones."""
        return (self._gen.random(shape) < keep_prob).astype(np.float64)

    def truncated_normal(self, shape: tuple[int, ...], stddev: float, bound: float = 2.0) -> np.ndarray:
        """Normal(0, stddev) resampled until every draw lies within ±bound·stddev."""
        out = self._gen.normal(0.0, stddev, shape)
        limit = bound * stddev
        outside = np.abs(out) > limit
        while outside.any():
            out[outside] = self._gen.normal(0.0, stddev, int(outside.sum()))
            outside = np.abs(out) > limit
        return out
