from collections import Counter

import pytest
from pydantic import ValidationError

from news_pct.data import Dataset, SplitSpec, SynthConfig, generate_synthetic, held_out_size, split
from news_pct.utils.errors import UsageError


@pytest.fixture(scope="module")
def dataset() -> Dataset:
    return generate_synthetic(SynthConfig(n_records=37, seed=3))


def refs(part: Dataset, full: Dataset) -> list[int]:
    index = {id(r): i for i, r in enumerate(full.records)}
    return [index[id(r)] for r in part.records]


@pytest.mark.parametrize("n, fraction, expected", [(10, 0.10, 1), (8000, 0.10, 800), (15, 0.10, 2), (14, 0.10, 1), (5, 0.5, 3)])
def test_held_out_size_rounds_half_up(n, fraction, expected):
    assert held_out_size(n, fraction) == expected


def test_ten_records_split_one_to_nine():
    dataset = generate_synthetic(SynthConfig(n_records=10, seed=0))
    train, test = split(dataset, SplitSpec(test_fraction=0.10, seed=42))
    assert (len(train), len(test)) == (9, 1)


def test_partition_is_disjoint_covering_and_sized_for_many_seeds(dataset):
    n_test = held_out_size(len(dataset), 0.10)
    for seed in range(1000):
        train, test = split(dataset, SplitSpec(seed=seed))
        train_refs, test_refs = refs(train, dataset), refs(test, dataset)
        assert len(test_refs) == n_test
        assert not set(train_refs) & set(test_refs)
        assert Counter(train_refs + test_refs) == Counter(range(len(dataset)))
        # both halves keep file order
        assert train_refs == sorted(train_refs)
        assert test_refs == sorted(test_refs)


def test_same_seed_gives_same_partition(dataset):
    a = split(dataset, SplitSpec(seed=123))
    b = split(dataset, SplitSpec(seed=123))
    assert a == b


def test_different_seeds_usually_differ(dataset):
    partitions = {tuple(refs(split(dataset, SplitSpec(seed=s))[1], dataset)) for s in range(20)}
    assert len(partitions) > 1


def test_empty_dataset_cannot_be_split():
    with pytest.raises(UsageError):
        split(Dataset(), SplitSpec())


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1, 1.5])
def test_fraction_must_lie_strictly_between_zero_and_one(fraction):
    with pytest.raises(ValidationError):
        SplitSpec(test_fraction=fraction)


def test_seed_must_fit_in_64_bits():
    SplitSpec(seed=2**64 - 1)
    with pytest.raises(ValidationError):
        SplitSpec(seed=2**64)
