from os import environ
from sys import argv as sys_argv
from pathlib import Path
from logging import DEBUG, INFO, getLogger
from argparse import ArgumentParser, Namespace
from collections.abc import Callable

from pydantic import ValidationError

from news_pct.__main__ import setup_logging
from news_pct.constants import ALLOWED_ARCHS, DEFAULT_VOCAB_SIZE, VERSION_IDS
from news_pct.data.record import filter_tickers
from news_pct.data.dataset_io import load_dataset, save_dataset, validate_dataset
from news_pct.data.split import SPLIT_SPEC_DEFAULTS, SplitSpec, split
from news_pct.data.synthetic import generate_synthetic
from news_pct.modality.compose import build_examples, compose_input
from news_pct.modality.versions import parse_version
from news_pct.model.config import ModelConfig
from news_pct.tokenizer.vocab import build_vocab, load_vocab, save_vocab
from news_pct.training.loop import train_model, save_loss_history
from news_pct.training.grad_check import grad_check
from news_pct.training.checkpoint import CheckpointConfigs, checkpoint_arch, load_checkpoint, save_checkpoint
from news_pct.lstm.windows import build_windows
from news_pct.lstm.train import train_lstm, evaluate_lstm, lstm_grad_check, load_lstm_checkpoint, save_lstm_checkpoint
from news_pct.evaluation.report import evaluate_model
from news_pct.evaluation.trend import trend_report
from news_pct.evaluation.comparison import compare_models, paired_deltas, summarize_groups
from news_pct.evaluation.emit import emit_report, load_report_json
from news_pct.cli.config_file import load_experiment_config
from news_pct.cli.manifest import changed_files, load_manifest, write_manifest
from news_pct.utils.errors import NewsPctError, UsageError

LOGGER = getLogger(__name__)

type Command = Callable[[Namespace, ArgumentParser, list[str]], int]


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="news-pct", description="Headline-driven stock percent-change experiments.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level and show progress bars.")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="Check a dataset CSV against the schema and invariants.")
    p.add_argument("data", type=Path)

    p = commands.add_parser("synth", help="Generate a synthetic dataset with a known headline signal.")
    p.add_argument("--config", type=Path, help="Config file: TOML tables or flat key = value lines.")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--n-records", type=int)
    p.add_argument("--kind", choices=("lexicon", "ar1"))
    p.add_argument("--noise-stddev", type=float)

    p = commands.add_parser("build-vocab", help="Build a WordPiece vocabulary from composed inputs.")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--size", type=int, default=DEFAULT_VOCAB_SIZE, help=f"Target size (default: {DEFAULT_VOCAB_SIZE}).")
    p.add_argument("--version", default="v4", help="Modality version whose inputs form the corpus (default: v4).")
    p.add_argument("--out", type=Path, required=True)

    p = commands.add_parser("split", help="Seeded train/test split.")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--test-fraction", type=float, default=SPLIT_SPEC_DEFAULTS["test_fraction"])
    p.add_argument("--seed", type=int, default=SPLIT_SPEC_DEFAULTS["seed"])
    p.add_argument("--tickers", nargs="+", help="Keep only these tickers first, e.g. a technology group.")
    p.add_argument("--out-train", type=Path, required=True)
    p.add_argument("--out-test", type=Path, required=True)

    p = commands.add_parser("train", help="Train the encoder or the LSTM baseline.")
    p.add_argument("--arch", choices=sorted(ALLOWED_ARCHS), default="bert")
    p.add_argument("--version", help=f"Modality version, encoder only ({', '.join(VERSION_IDS)}).")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--vocab", type=Path, help="Vocabulary file, encoder only.")
    p.add_argument("--config", type=Path, help="Config file: TOML tables or flat key = value lines.")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--loss-history", type=Path, help="Also write per-epoch mean loss as CSV.")
    p.add_argument("--seed", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--learning-rate", type=float)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--max-len", type=int)

    p = commands.add_parser("evaluate", help="Score a checkpoint on a dataset.")
    p.add_argument("--ckpt", type=Path, required=True)
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True, help="Report JSON.")
    p.add_argument("--trend", type=Path, help="Cumulative trend chart (.svg) or series (.csv/.json).")
    p.add_argument("--csv", type=Path, help="One-row metrics CSV.")
    p.add_argument("--group", default="general", help="Experiment group label, e.g. general or tech.")

    p = commands.add_parser("compare", help="Tabulate several report JSON files.")
    p.add_argument("--reports", type=Path, nargs="+", required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--summary", type=Path, help="Per (group, arch) mean metrics.")
    p.add_argument("--deltas", type=Path, help="Symbolic and date direction-accuracy deltas.")
    p.add_argument("--chart", type=Path, help="Direction-accuracy bar chart (.svg).")

    p = commands.add_parser("grad-check", help="Verify analytic gradients against finite differences.")
    p.add_argument("--arch", choices=sorted(ALLOWED_ARCHS), default="bert")
    p.add_argument("--out", type=Path, help="Write the report as JSON.")

    p = commands.add_parser("replay", help="Re-run a recorded command and verify its outputs.")
    p.add_argument("--manifest", type=Path, required=True)
    return parser


def cmd_validate(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    report = validate_dataset(args.data)
    for issue in report.issues:
        where = f"row {issue.row}" + (f", field '{issue.field}'" if issue.field else "")
        print(f"{args.data}: {where}: {issue.message}")
    if report.first_date and report.last_date:
        span = f"{report.first_date.isoformat()} .. {report.last_date.isoformat()}"
        print(f"{args.data}: {report.n_records} records, {report.n_tickers} tickers, {span}")
    if not report.ok:
        LOGGER.error(f"{args.data}: {len(report.issues)} violations")
        return 1
    return 0


def cmd_synth(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    overrides = {
        "synth": {
            "seed": args.seed,
            "n_records": args.n_records,
            "kind": args.kind,
            "noise_stddev": args.noise_stddev,
        }
    }
    config = load_experiment_config(args.config, overrides, command="synth").synth
    save_dataset(generate_synthetic(config), args.out)
    inputs = [args.config] if args.config else []
    write_manifest("synth", argv, inputs, [args.out], {"synth": config.model_dump(mode="json")}, config.seed)
    return 0


def cmd_build_vocab(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    version = parse_version(args.version)
    dataset = load_dataset(args.data)
    vocab = build_vocab([compose_input(r, version) for r in dataset.records], args.size)
    save_vocab(vocab, args.out)
    write_manifest("build-vocab", argv, [args.data], [args.out], {"size": args.size, "version": version.id})
    return 0


def cmd_split(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    spec = SplitSpec(test_fraction=args.test_fraction, seed=args.seed)
    dataset = load_dataset(args.data)
    if args.tickers:
        dataset = filter_tickers(dataset, args.tickers)
    train_set, test_set = split(dataset, spec)
    save_dataset(train_set, args.out_train)
    save_dataset(test_set, args.out_test)
    LOGGER.info(f"Split {len(dataset)} records into {len(train_set)} train / {len(test_set)} test")
    config = {**spec.model_dump(), "tickers": sorted(args.tickers or [])}
    write_manifest("split", argv, [args.data], [args.out_train, args.out_test], config, spec.seed)
    return 0


def cmd_train(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    if args.arch == "lstm" and args.version:
        parser.error("--version applies to --arch bert only")
    if args.arch == "bert" and not (args.version and args.vocab):
        parser.error("--arch bert needs --version and --vocab")

    overrides = {
        "train": {
            "seed": args.seed,
            "epochs": args.epochs,
            "learning_rate": args.learning_rate,
            "batch_size": args.batch_size,
        },
        "model": {"max_len": args.max_len},
    }
    config = load_experiment_config(args.config, overrides, command=args.arch)
    dataset = load_dataset(args.data)
    inputs = [args.data] + ([args.config] if args.config else [])

    if args.arch == "lstm":
        lstm_config = config.lstm_config()
        result = train_lstm(build_windows(dataset, lstm_config.window), lstm_config)
        save_lstm_checkpoint(result.params, lstm_config, args.out)
        resolved = lstm_config.model_dump(mode="json")
    else:
        version = parse_version(args.version)
        vocab = load_vocab(args.vocab)
        # the embedding table holds exactly the vocabulary
        model_config = ModelConfig.model_validate({**config.model.model_dump(), "vocab_size": len(vocab)})
        result = train_model(build_examples(dataset, version), vocab, model_config, config.train)
        configs = CheckpointConfigs(model=model_config, train=config.train, version_id=version.id)
        save_checkpoint(result.params, configs, vocab, args.out)
        resolved = configs.model_dump(mode="json")
        inputs.append(args.vocab)

    outputs = [args.out]
    if args.loss_history:
        outputs.append(save_loss_history(result.loss_history, args.loss_history))
    write_manifest("train", argv, inputs, outputs, resolved, config.train.seed)
    return 0


def cmd_evaluate(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    dataset = load_dataset(args.data)
    if checkpoint_arch(args.ckpt) == "lstm":
        params, lstm_config = load_lstm_checkpoint(args.ckpt)
        report = evaluate_lstm(params, build_windows(dataset, lstm_config.window), dataset, group=args.group)
    else:
        ckpt = load_checkpoint(args.ckpt)
        version = parse_version(ckpt.configs.version_id)
        report = evaluate_model(ckpt.params, ckpt.configs.model, ckpt.vocab, dataset, version, group=args.group)

    outputs = [emit_report(report, args.out, "json")]
    if args.trend:
        outputs.append(emit_report(trend_report(report.per_example), args.trend))
    if args.csv:
        outputs.append(emit_report(report, args.csv, "csv"))
    within = "N/A" if report.within_2pct is None else f"{report.within_2pct:.4f} / {report.within_5pct:.4f}"
    print(
        f"{report.version} ({report.arch}, {report.n_test} examples): direction {report.direction_accuracy:.4f}, "
        f"within 2/5 {within}, mse {report.test_mse:.4f}"
    )
    write_manifest("evaluate", argv, [args.ckpt, args.data], outputs, {"group": args.group})
    return 0


def cmd_compare(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    reports = [load_report_json(p) for p in args.reports]
    outputs = [emit_report(compare_models(reports), args.out)]
    if args.summary:
        outputs.append(emit_report(summarize_groups(reports), args.summary))
    if args.deltas:
        outputs.append(emit_report(paired_deltas(reports), args.deltas))
    if args.chart:
        outputs.append(emit_report(compare_models(reports), args.chart, "svg"))
    write_manifest("compare", argv, list(args.reports), outputs)
    return 0


def cmd_grad_check(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    report = grad_check() if args.arch == "bert" else lstm_grad_check()
    print(report.summary())
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
        write_manifest("grad-check", argv, [], [args.out], {"arch": args.arch})
    return 0 if report.passed else 1


def cmd_replay(args: Namespace, parser: ArgumentParser, argv: list[str]) -> int:
    manifest = load_manifest(args.manifest)
    if manifest.command == "replay":
        raise UsageError("a replay manifest cannot be replayed")
    stale = changed_files(manifest.inputs)
    if stale:
        raise UsageError(f"inputs changed since the recorded run: {', '.join(stale)}")

    code = run(manifest.argv)
    if code != 0:
        return code
    differing = changed_files(manifest.outputs)
    if differing:
        LOGGER.error(f"replay produced different bytes for: {', '.join(differing)}")
        return 1
    print(f"replayed '{manifest.command}': {len(manifest.outputs)} outputs byte-identical")
    return 0


COMMANDS: dict[str, Command] = {
    "validate": cmd_validate,
    "synth": cmd_synth,
    "build-vocab": cmd_build_vocab,
    "split": cmd_split,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
    "grad-check": cmd_grad_check,
    "replay": cmd_replay,
}


def run(argv: list[str] | None = None) -> int:
    """Parse `argv` and run one command. Returns the exit status; usage errors exit with 2."""
    argv = list(sys_argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        environ["NEWS_PCT_VERBOSE"] = "1"
    setup_logging(DEBUG if args.verbose else INFO)

    try:
        return COMMANDS[args.command](args, parser, argv)
    except (NewsPctError, ValidationError, OSError) as e:
        LOGGER.error(f"{args.command} failed: {e}")
        return 1


def main() -> None:
    raise SystemExit(run())
