import logging
from pathlib import Path
from typing import Optional, Tuple

from zkbundles.config.config_keys import (
    CONFIG_LOG_LEVEL,
    DEFAULT_LOG_LEVEL,
    resolve_log_level,
)
from zkbundles.config.env_config import EnvConfig

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_VERSION_FILE = Path(__file__).with_name("version")

logger = logging.getLogger(__name__)


def _load_version(path: Path = _VERSION_FILE) -> Tuple[str, str]:
    # release builds write a single "version,build_number" line
    try:
        version, build_number = path.read_text().strip().split(",")
    except (OSError, ValueError):
        return "local", "0"
    return version, build_number


VERSION, BUILD_NUMBER = _load_version()


def init_logging(level: Optional[str] = None, config: Optional[EnvConfig] = None):
    """
    Configures the root logger with a single stream handler. The level comes from the argument
    or the LOG_LEVEL setting.
    """
    if level is None:
        level = (config or EnvConfig()).get_str_value(CONFIG_LOG_LEVEL, DEFAULT_LOG_LEVEL)
    logging.basicConfig(level=resolve_log_level(level), format=_LOG_FORMAT, force=True)
    logger.debug(f"Logging initialised at {level.strip().upper()}")


def version_string() -> str:
    return f"{VERSION},{BUILD_NUMBER}"
