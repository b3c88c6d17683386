import yaml
from pathlib import Path
from typing import Any, Optional

from scripts.core.models import ConfigurationError


class ConfigLoader:
    """
    Loads an experiment document and gives access to its keys.

    Documents are JSON, which PyYAML reads as a YAML subset, so hand-written
    YAML experiment files work too. Supports nested keys via dot notation.
    An already parsed mapping can be wrapped by passing it as data; path
    then only names the source in error messages.
    """
    def __init__(self, path: str | Path, data: Optional[dict] = None):
        self.path = Path(path)
        self.config = self._load() if data is None else self._check(data)

    def _load(self) -> dict:
        if not self.path.exists():
            raise ConfigurationError(f"Config file not found: {self.path}")
        try:
            with self.path.open("r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Cannot parse {self.path}: {e}") from e
        return self._check(data)

    def _check(self, data: Any) -> dict:
        if not isinstance(data, dict):
            raise ConfigurationError(f"{self.path} must hold a mapping at the top level")
        return data

    def get(self, key: str, default: Any = None) -> Any:
        """Supports dot notation for nested access."""
        val = self.config
        for part in key.split("."):
            if isinstance(val, dict) and part in val:
                val = val[part]
            else:
                return default
        return val

    def require(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise ConfigurationError(f"{self.path}: missing required key '{key}'")
        return value

    def as_dict(self) -> dict:
        return self.config
