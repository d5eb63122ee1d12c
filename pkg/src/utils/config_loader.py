import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, "config", "config.yaml")


def get_env_or_none(key: str) -> Optional[str]:
    val = os.getenv(key)
    if not val or "your_" in val.lower() or val.strip() == "":
        return None
    return val


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Load configuration from config/config.yaml and environment variables.

    Environment (or .env) values win over the YAML file, explicit
    overrides win over both.
    """
    load_dotenv()

    config_path = path or get_env_or_none("GAMMA2_CONFIG") or DEFAULT_CONFIG_PATH
    config: Dict[str, Any] = {}
    if os.path.exists(config_path):
        with open(config_path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f) or {}

    app = config.setdefault("app", {})
    logging_cfg = config.setdefault("logging", {})

    threads = get_env_or_none("GAMMA2_THREADS")
    if threads is not None:
        app["threads"] = int(threads)
    seed = get_env_or_none("GAMMA2_SEED")
    if seed is not None:
        app["seed"] = int(seed)
    level = get_env_or_none("GAMMA2_LOG_LEVEL")
    if level is not None:
        logging_cfg["level"] = level.upper()
    log_file = get_env_or_none("GAMMA2_LOG_FILE")
    if log_file is not None:
        logging_cfg["file"] = log_file

    if overrides:
        config = _merge(config, overrides)
    return config


def resolve_threads(config: Dict[str, Any], requested: Optional[int] = None) -> int:
    """--threads flag, then GAMMA2_THREADS / config, then available cores."""
    if requested:
        return max(1, int(requested))
    configured = config.get("app", {}).get("threads")
    if configured:
        return max(1, int(configured))
    return os.cpu_count() or 1
