"""
Environment-driven configuration.

Values are read at call time so tests and the CLI can override them through
the environment without reloading modules.
"""
import logging
import os

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEN = 10**7
HARD_MAX_LEN = 10**8
DEFAULT_TUPLE_BUDGET = 200_000
DEFAULT_ORACLE_BUDGET = 5_000_000
DEFAULT_THREADS = 1


def _int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        logger.debug("ignoring non-integer %s=%r", name, raw)
        return default
    if value <= 0:
        logger.debug("ignoring non-positive %s=%r", name, raw)
        return default
    return value


def max_word_length() -> int:
    """Cap on expanded word length (LLQ_MAX_LEN), never above HARD_MAX_LEN."""
    return min(_int_from_env("LLQ_MAX_LEN", DEFAULT_MAX_LEN), HARD_MAX_LEN)


def tuple_budget() -> int:
    return _int_from_env("LLQ_TUPLE_BUDGET", DEFAULT_TUPLE_BUDGET)


def oracle_budget() -> int:
    return _int_from_env("LLQ_ORACLE_BUDGET", DEFAULT_ORACLE_BUDGET)


def default_threads() -> int:
    return _int_from_env("LLQ_THREADS", DEFAULT_THREADS)


def log_level() -> int:
    """LOG_LEVEL: 0 silent, 1 informational, 2 debug. Anything else is 0."""
    raw = os.environ.get("LOG_LEVEL", "0").strip()
    try:
        level = int(raw)
    except ValueError:
        return 0
    return level if level in (0, 1, 2) else 0


def log_file() -> str:
    return os.environ.get("LOG_FILE", "").strip()
