"""Configuration Loading

Reads config/config.yaml (or the file named by TMN_CONFIG), lets a .env file
and TMN_* environment variables override single keys, and fills anything
missing from the built-in defaults.
"""

from typing import Dict, Any, Optional
from pathlib import Path
import copy
import logging
import os

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"

DEFAULT_CONFIG: Dict[str, Any] = {
    "groups": {
        "order_cap": 2000,
        "associativity_check": "sample",
        "spot_check_factor": 10,
    },
    "search": {
        "node_limit": 10_000_000,
        "time_limit_seconds": 60,
    },
    "oracle": {
        "max_order": 24,
        "max_mn": 12,
        "clique_max_order": 24,
    },
    "corpus": {
        "include_s5": False,
    },
    "logging": {
        "level": "WARNING",
        "file": "logs/tmn.log",
    },
    "reports": {
        "dir": "reports",
    },
}

# env var -> (section, key, type)
ENV_OVERRIDES = {
    "TMN_ORDER_CAP": ("groups", "order_cap", int),
    "TMN_NODE_LIMIT": ("search", "node_limit", int),
    "TMN_TIME_LIMIT": ("search", "time_limit_seconds", float),
    "TMN_LOG_LEVEL": ("logging", "level", str),
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Merge override into a copy of base, recursing into nested dicts.

    Args:
        base: Default values
        override: Values read from file

    Returns:
        New merged dictionary
    """
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """Load configuration from YAML and environment.

    Args:
        config_path: Optional explicit path (falls back to TMN_CONFIG, then
            config/config.yaml under the project root)

    Returns:
        Configuration dictionary with every default key present

    Raises:
        ValueError: If the file exists but is not a YAML mapping
    """
    load_dotenv()

    if config_path is None:
        env_path = os.getenv("TMN_CONFIG")
        config_path = Path(env_path) if env_path else DEFAULT_CONFIG_PATH

    config_path = Path(config_path)
    file_config: Dict[str, Any] = {}
    if config_path.exists():
        with open(config_path) as f:
            loaded = yaml.safe_load(f)
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Config file {config_path} must contain a mapping")
        file_config = loaded
        logger.debug(f"Loaded configuration from {config_path}")
    else:
        logger.debug(f"No config file at {config_path}, using defaults")

    config = _deep_merge(DEFAULT_CONFIG, file_config)

    for env_name, (section, key, cast) in ENV_OVERRIDES.items():
        raw = os.getenv(env_name)
        if raw is None or raw == "":
            continue
        try:
            config[section][key] = cast(raw)
        except ValueError:
            logger.warning(f"Ignoring {env_name}={raw!r}: expected {cast.__name__}")

    return config
