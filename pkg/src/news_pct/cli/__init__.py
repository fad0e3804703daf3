from news_pct.cli.config_file import ExperimentConfig, load_experiment_config, parse_experiment_config
from news_pct.cli.manifest import RunManifest, load_manifest, write_manifest
from news_pct.cli.main import run, main, build_parser

__all__ = [
    "ExperimentConfig",
    "RunManifest",
    "run",
    "main",
    "build_parser",
    "load_manifest",
    "write_manifest",
    "load_experiment_config",
    "parse_experiment_config",
]
