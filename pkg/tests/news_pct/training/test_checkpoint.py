import pytest

from news_pct.numerics.rng import Rng
from news_pct.model import ModelConfig, init_params
from news_pct.tokenizer import build_vocab
from news_pct.training import CheckpointConfigs, TrainConfig, checkpoint_arch, load_checkpoint, save_checkpoint
from news_pct.training.checkpoint import read_archive, write_archive
from news_pct.constants import BERT_CHECKPOINT_MAGIC, LSTM_CHECKPOINT_MAGIC
from news_pct.utils.errors import CheckpointShapeError, CorruptCheckpointError


@pytest.fixture
def vocab():
    return build_vocab(["acme beats estimates", "globex misses"], 300)


@pytest.fixture
def configs(vocab) -> CheckpointConfigs:
    model = ModelConfig(vocab_size=len(vocab), hidden_dim=8, num_layers=1, num_heads=2, ff_dim=16, max_len=8)
    return CheckpointConfigs(model=model, train=TrainConfig(epochs=1), version_id="v1")


@pytest.fixture
def saved(tmp_path, configs, vocab):
    params = init_params(configs.model, Rng(0, "init"))
    path = save_checkpoint(params, configs, vocab, tmp_path / "model.ckpt")
    return path, params


def test_round_trip_is_bit_exact(saved, configs, vocab):
    path, params = saved
    loaded = load_checkpoint(path, expected_config=configs.model)
    assert loaded.params.equals(params)
    assert loaded.configs == configs
    assert loaded.vocab == vocab


def test_float32_round_trip(tmp_path, configs, vocab):
    configs = configs.model_copy(update={"model": configs.model.model_copy(update={"precision": "float32"})})
    params = init_params(configs.model, Rng(0, "init"))
    loaded = load_checkpoint(save_checkpoint(params, configs, vocab, tmp_path / "f32.ckpt"))
    assert loaded.params.equals(params)


def test_same_inputs_write_identical_bytes(tmp_path, saved, configs, vocab):
    path, params = saved
    again = save_checkpoint(params, configs, vocab, tmp_path / "again.ckpt")
    assert again.read_bytes() == path.read_bytes()


def test_magic_identifies_architecture(saved, tmp_path):
    path, _ = saved
    assert checkpoint_arch(path) == "bert"
    other = write_archive(tmp_path / "lstm.ckpt", LSTM_CHECKPOINT_MAGIC, {}, {})
    assert checkpoint_arch(other) == "lstm"


@pytest.mark.parametrize("keep", [0, 10, 100, -1])
def test_truncated_file_is_corrupt(saved, keep):
    path, _ = saved
    data = path.read_bytes()
    path.write_bytes(data[:keep] if keep >= 0 else data[:-1])
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(path)


def test_flipped_byte_is_corrupt(saved):
    path, _ = saved
    data = bytearray(path.read_bytes())
    data[len(data) // 2] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(CorruptCheckpointError, match="digest"):
        load_checkpoint(path)


def test_wrong_magic_is_corrupt(tmp_path):
    path = write_archive(tmp_path / "lstm.ckpt", LSTM_CHECKPOINT_MAGIC, {}, {})
    with pytest.raises(CorruptCheckpointError):
        read_archive(path, BERT_CHECKPOINT_MAGIC)


def test_different_config_is_a_shape_error(saved, configs):
    path, _ = saved
    with pytest.raises(CheckpointShapeError, match="hidden_dim"):
        load_checkpoint(path, expected_config=configs.model.model_copy(update={"hidden_dim": 16}))


def test_saving_mismatched_params_is_rejected(tmp_path, configs, vocab):
    params = init_params(configs.model.model_copy(update={"ff_dim": 4}), Rng(0))
    with pytest.raises(CheckpointShapeError):
        save_checkpoint(params, configs, vocab, tmp_path / "bad.ckpt")
