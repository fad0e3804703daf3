import json

import pytest

from news_pct.cli import run
from news_pct.cli.manifest import load_manifest, manifest_path
from news_pct.data import load_dataset
from news_pct.evaluation import load_report_csv
from news_pct.lstm import load_lstm_checkpoint

TINY_CONFIG = """\
[model]
hidden_dim = 8
num_layers = 1
num_heads = 2
ff_dim = 16
max_len = 16

[train]
epochs = 1
batch_size = 16
learning_rate = 1e-3

[lstm]
window = 2
hidden_dim = 4
"""


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "tiny.toml").write_text(TINY_CONFIG)
    return tmp_path


@pytest.fixture
def prepared(workdir):
    """Synthetic data split 90/10 with a vocabulary built on the training half."""
    data, train, test, vocab = (workdir / n for n in ("data.csv", "train.csv", "test.csv", "vocab.txt"))
    assert run(["synth", "--out", str(data), "--n-records", "200", "--seed", "4"]) == 0
    assert run(["split", "--data", str(data), "--out-train", str(train), "--out-test", str(test), "--seed", "4"]) == 0
    assert run(["build-vocab", "--data", str(train), "--size", "300", "--out", str(vocab)]) == 0
    return workdir


def train_bert(workdir, version: str, out: str, *extra: str) -> int:
    return run([
        "train", "--version", version, "--data", str(workdir / "train.csv"), "--vocab", str(workdir / "vocab.txt"),
        "--config", str(workdir / "tiny.toml"), "--out", str(workdir / out), *extra,
    ])


def test_split_then_validate(workdir, capsys):
    data, train, test = workdir / "d.csv", workdir / "tr.csv", workdir / "te.csv"
    assert run(["synth", "--out", str(data), "--n-records", "100"]) == 0
    assert run(["split", "--data", str(data), "--out-train", str(train), "--out-test", str(test)]) == 0
    assert len(load_dataset(train)) == 90
    assert len(load_dataset(test)) == 10
    assert run(["validate", str(train)]) == 0
    assert run(["validate", str(test)]) == 0
    assert "10 records" in capsys.readouterr().out


def test_split_restricted_to_a_ticker_group(workdir):
    data, train, test = workdir / "d.csv", workdir / "tr.csv", workdir / "te.csv"
    assert run(["synth", "--out", str(data), "--n-records", "100"]) == 0
    assert run([
        "split", "--data", str(data), "--out-train", str(train), "--out-test", str(test), "--tickers", "ACME", "glbx",
    ]) == 0
    kept = load_dataset(train).records + load_dataset(test).records
    assert len(kept) == 40
    assert {r.ticker for r in kept} == {"ACME", "GLBX"}


def test_validate_reports_bad_rows(workdir, capsys):
    path = workdir / "bad.csv"
    path.write_text(
        "date,ticker,company,headline,source,open,close,pct_change\n"
        "2023-01-02,ACME,Acme,Up,Wire,100,102,2\n"
        "2023-01-03,ACME,Acme,Down,Wire,-5,102,2\n"
    )
    assert run(["validate", str(path)]) == 1
    assert "row 2" in capsys.readouterr().out


def test_missing_input_file_exits_one(workdir):
    assert run(["validate", str(workdir / "nope.csv")]) == 1


def test_synth_reads_a_flat_config(workdir):
    config, out = workdir / "synth.cfg", workdir / "ar.csv"
    config.write_text("kind = ar1\nseed = 5\nn_records = 40\n")
    assert run(["synth", "--config", str(config), "--out", str(out)]) == 0
    dataset = load_dataset(out)
    assert len(dataset) == 40
    assert load_manifest(manifest_path(out)).config["synth"]["kind"] == "ar1"


def test_lstm_train_reads_a_flat_config(workdir):
    data, config, ckpt = workdir / "d.csv", workdir / "lstm.cfg", workdir / "lstm.ckpt"
    assert run(["synth", "--out", str(data), "--n-records", "60", "--kind", "ar1"]) == 0
    config.write_text("seed = 7\nhidden_dim = 3\nwindow = 2\nepochs = 1\n")
    assert run(["train", "--arch", "lstm", "--data", str(data), "--config", str(config), "--out", str(ckpt)]) == 0
    _, lstm_config = load_lstm_checkpoint(ckpt)
    assert (lstm_config.hidden_dim, lstm_config.window) == (3, 2)
    assert lstm_config.train.seed == 7


def test_lstm_with_version_is_a_usage_error(workdir):
    with pytest.raises(SystemExit) as exc:
        run(["train", "--arch", "lstm", "--version", "v1", "--data", "x.csv", "--out", "x.ckpt"])
    assert exc.value.code == 2


def test_bert_without_vocab_is_a_usage_error(workdir):
    with pytest.raises(SystemExit) as exc:
        run(["train", "--version", "v1", "--data", "x.csv", "--out", "x.ckpt"])
    assert exc.value.code == 2


def test_symbolic_report_lacks_within_keys(prepared, capsys):
    assert train_bert(prepared, "v5", "v5.ckpt") == 0
    report = prepared / "v5.json"
    assert run(["evaluate", "--ckpt", str(prepared / "v5.ckpt"), "--data", str(prepared / "test.csv"), "--out", str(report)]) == 0
    data = json.loads(report.read_text())
    assert "within_2pct" not in data and "within_5pct" not in data
    assert data["n_test"] == 20
    assert "within 2/5 N/A" in capsys.readouterr().out


def test_training_is_reproducible(prepared):
    assert train_bert(prepared, "v1", "a.ckpt", "--seed", "7") == 0
    assert train_bert(prepared, "v1", "b.ckpt", "--seed", "7") == 0
    assert (prepared / "a.ckpt").read_bytes() == (prepared / "b.ckpt").read_bytes()


VERSIONS = ("v1", "v2", "v3", "v4", "v5", "v6")


def test_full_pipeline_and_compare(prepared):
    reports = []
    for version in VERSIONS:
        assert train_bert(prepared, version, f"{version}.ckpt") == 0
    assert run([
        "train", "--arch", "lstm", "--data", str(prepared / "train.csv"),
        "--config", str(prepared / "tiny.toml"), "--out", str(prepared / "lstm.ckpt"),
    ]) == 0
    for name in (*VERSIONS, "lstm"):
        out = prepared / f"{name}.json"
        assert run([
            "evaluate", "--ckpt", str(prepared / f"{name}.ckpt"), "--data", str(prepared / "test.csv"),
            "--out", str(out), "--trend", str(prepared / f"{name}.svg"),
        ]) == 0
        reports.append(str(out))

    table = prepared / "table.csv"
    assert run([
        "compare", "--reports", *reports, "--out", str(table),
        "--summary", str(prepared / "groups.json"), "--deltas", str(prepared / "deltas.json"),
    ]) == 0
    rows = load_report_csv(table)
    assert [(r.version, r.arch) for r in rows] == [(v, "bert") for v in VERSIONS] + [("lstm", "lstm")]
    assert all(r.within_2pct is None for r in rows if r.version in ("v5", "v6"))
    assert all(r.within_2pct is not None for r in rows if r.version in ("v1", "v2", "v3", "v4"))
    deltas = json.loads((prepared / "deltas.json").read_text())
    assert [(d["first"], d["second"]) for d in deltas] == [("v1", "v5"), ("v4", "v6"), ("v1", "v4"), ("v5", "v6")]
    assert 'id="cum_actual"' in (prepared / "v1.svg").read_text()


def test_compare_needs_two_reports(prepared):
    assert train_bert(prepared, "v1", "v1.ckpt") == 0
    out = prepared / "v1.json"
    assert run(["evaluate", "--ckpt", str(prepared / "v1.ckpt"), "--data", str(prepared / "test.csv"), "--out", str(out)]) == 0
    assert run(["compare", "--reports", str(out), "--out", str(prepared / "t.csv")]) == 1


def test_manifest_records_run(prepared):
    assert train_bert(prepared, "v2", "v2.ckpt", "--epochs", "2") == 0
    manifest = load_manifest(manifest_path(prepared / "v2.ckpt"))
    assert manifest.command == "train"
    assert manifest.config["train"]["epochs"] == 2
    assert manifest.config["version_id"] == "v2"
    assert str(prepared / "vocab.txt") in manifest.inputs
    assert list(manifest.outputs) == [str(prepared / "v2.ckpt")]


def test_replay_reproduces_outputs(prepared, capsys):
    assert train_bert(prepared, "v1", "v1.ckpt", "--loss-history", str(prepared / "loss.csv")) == 0
    assert run(["replay", "--manifest", str(manifest_path(prepared / "v1.ckpt"))]) == 0
    assert "byte-identical" in capsys.readouterr().out


def test_replay_refuses_changed_inputs(prepared):
    assert train_bert(prepared, "v1", "v1.ckpt") == 0
    with open(prepared / "train.csv", "a") as f:
        f.write("\n")
    assert run(["replay", "--manifest", str(manifest_path(prepared / "v1.ckpt"))]) == 1


@pytest.mark.parametrize("arch", ["bert", "lstm"])
def test_grad_check_command(workdir, arch, capsys):
    out = workdir / f"{arch}.json"
    assert run(["grad-check", "--arch", arch, "--out", str(out)]) == 0
    assert capsys.readouterr().out.startswith("PASS")
    assert json.loads(out.read_text())["max_error"] <= 1e-3
