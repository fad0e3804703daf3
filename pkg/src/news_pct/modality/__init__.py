from news_pct.modality.versions import VERSIONS, ModalityVersion, parse_version
from news_pct.modality.compose import TrainingExample, make_target, compose_input, build_examples

__all__ = [
    "VERSIONS",
    "ModalityVersion",
    "TrainingExample",
    "make_target",
    "compose_input",
    "parse_version",
    "build_examples",
]
