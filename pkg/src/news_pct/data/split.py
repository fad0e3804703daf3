from math import floor
from logging import getLogger

from pydantic import BaseModel, Field

from news_pct.numerics.rng import Rng, MAX_SEED
from news_pct.data.record import Dataset
from news_pct.utils.errors import UsageError

LOGGER = getLogger(__name__)

SPLIT_SPEC_DEFAULTS = {
    "test_fraction": 0.10,
    "seed": 0,
}


class SplitSpec(BaseModel):
    model_config = {"frozen": True}

    test_fraction: float = Field(
        default=SPLIT_SPEC_DEFAULTS["test_fraction"],
        gt=0.0,
        lt=1.0,
        description="Share of records held out for testing",
    )
    seed: int = Field(default=SPLIT_SPEC_DEFAULTS["seed"], ge=0, le=MAX_SEED)


def held_out_size(n: int, test_fraction: float) -> int:
    """Round-half-up of test_fraction × n."""
    return int(floor(test_fraction * n + 0.5))


def split(dataset: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Random train/test partition decided only by the seed.

    Both halves keep the dataset's original record order.

    Returns:
        (train, test)
    """
    n = len(dataset)
    if n == 0:
        raise UsageError("cannot split an empty dataset")

    n_test = held_out_size(n, spec.test_fraction)
    order = Rng(spec.seed, "split").permutation(n)
    test_idx = sorted(int(i) for i in order[:n_test])
    chosen = set(test_idx)
    train_idx = [i for i in range(n) if i not in chosen]

    LOGGER.info(f"Split {n} records into {len(train_idx)} train / {len(test_idx)} test (seed {spec.seed})")
    return dataset.subset(train_idx), dataset.subset(test_idx)
