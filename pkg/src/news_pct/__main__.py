from os import getenv
from pathlib import Path
from logging.handlers import RotatingFileHandler
from logging import INFO, DEBUG, Logger, Formatter, StreamHandler, getLogger

# Keep this module free of news_pct imports, everything else imports it.

BACKUP_LOG_COUNT = 5
LOG_MAX_BYTES = 5 * 1024 * 1024


def is_testing() -> bool:
    """Check if the code is running under the test suite.

    Returns:
        bool: True if running tests, False otherwise.
    """
    return getenv("NEWS_PCT_TESTING", "0") == "1"


def is_verbose() -> bool:
    """Check if verbose mode is enabled via the environment.

    Returns:
        bool: True if verbose mode is enabled, False otherwise.
    """
    return getenv("NEWS_PCT_VERBOSE", "0") == "1"


def _project_log_dir() -> Path:
    """Get the project's log directory, creating it if necessary."""
    override = getenv("NEWS_PCT_LOG_DIR", "")
    log_dir = Path(override) if override else Path(__file__).resolve().parents[2] / "logs"
    if not log_dir.exists():
        log_dir.mkdir(parents=True, exist_ok=True)
    return log_dir


def _project_log_file(log_file: str) -> Path:
    """Get the project's log file path."""
    name = f"{log_file}_tests" if is_testing() else log_file
    return _project_log_dir() / f"{name}.log"


def setup_logging(level: int = INFO, log_file: str = "news_pct") -> Logger:
    """
    Configure root logging once for the entire process.
    Returns the package logger for convenience.

    Args:
        level: The level to set, i.e. INFO, DEBUG, ERROR, etc.
        log_file: Stem of the log file written under the log directory.

    Returns:
        The configured package logger
    """

    # tests and verbose runs always log at DEBUG
    if level != DEBUG and (is_testing() or is_verbose()):
        level = DEBUG

    fmt = Formatter("%(asctime)s - [%(name)s] - %(levelname)s - %(message)s")

    file_handler = RotatingFileHandler(
        _project_log_file(log_file),
        mode="a" if not is_testing() else "w",
        maxBytes=LOG_MAX_BYTES,
        backupCount=BACKUP_LOG_COUNT,
        encoding="utf-8",
    )
    file_handler.setFormatter(fmt)

    stream_handler = StreamHandler()
    stream_handler.setFormatter(fmt)

    root = getLogger()
    root.handlers.clear()
    root.setLevel(level)
    root.addHandler(file_handler)
    root.addHandler(stream_handler)

    # matplotlib's font manager is chatty at DEBUG
    getLogger("matplotlib").setLevel(max(level, INFO))

    return getLogger(log_file)


if __name__ == "__main__":
    from news_pct.cli.main import main

    main()
