"""Configuration keys read through `EnvConfig`, without the ZK_ prefix."""

import logging

CONFIG_LOG_LEVEL = "LOG_LEVEL"
CONFIG_SCAN_WORKER_COUNT = "SCAN_WORKER_COUNT"
CONFIG_SCAN_MAX_POINTS = "SCAN_MAX_POINTS"
CONFIG_HEIGHT_WINDOW_SCALE = "HEIGHT_WINDOW_SCALE"
CONFIG_HEIGHT_WINDOW_MAX_DOUBLINGS = "HEIGHT_WINDOW_MAX_DOUBLINGS"
CONFIG_WIDTH_DEGREE_MARGIN = "WIDTH_DEGREE_MARGIN"
CONFIG_WIDTH_MAX_EXTENSIONS = "WIDTH_MAX_EXTENSIONS"

DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_SCAN_WORKER_COUNT = 1
DEFAULT_SCAN_MAX_POINTS = 1_000_000
DEFAULT_HEIGHT_WINDOW_SCALE = 1
DEFAULT_HEIGHT_WINDOW_MAX_DOUBLINGS = 6
DEFAULT_WIDTH_MAX_EXTENSIONS = 4

_LOG_LEVEL_ALLOWLIST = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "WARN": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}


def resolve_log_level(level_str: str) -> int:
    """Map a configured log-level string to a `logging` level constant.

    Raises ValueError on anything outside the allowlist.
    """
    normalized = (level_str or "").strip().upper()
    if normalized not in _LOG_LEVEL_ALLOWLIST:
        raise ValueError(
            f"Invalid {CONFIG_LOG_LEVEL}={level_str!r}. "
            f"Allowed: {', '.join(sorted(_LOG_LEVEL_ALLOWLIST))}."
        )
    return _LOG_LEVEL_ALLOWLIST[normalized]
