import logging
import os
from typing import Mapping, Optional

from zkbundles.errors import UsageError

logger = logging.getLogger(__name__)

_DEFAULT_PREFIX = "ZK"


class EnvConfig:
    """
    Loads configuration settings from environment variables named <prefix>_<key>.
    Absent or empty values fall back to the given default.
    """

    def __init__(self, prefix: str = _DEFAULT_PREFIX, environ: Optional[Mapping[str, str]] = None):
        self._prefix = prefix
        self._environ = os.environ if environ is None else environ

    def _name(self, key: str) -> str:
        return f"{self._prefix}_{key}" if self._prefix else key

    def get_value(self, key: str) -> Optional[str]:
        value = self._environ.get(self._name(key))
        return value if value else None

    def get_str_value(self, key: str, default: str) -> str:
        value = self.get_value(key)
        return default if value is None else value

    def get_optional_int_value(self, key: str) -> Optional[int]:
        value = self.get_value(key)
        if value is None:
            return None
        try:
            return int(value.strip())
        except ValueError:
            raise UsageError(f"Invalid integer for {self._name(key)}: {value!r}")

    def get_int_value(self, key: str, default: int) -> int:
        value = self.get_optional_int_value(key)
        return default if value is None else value
