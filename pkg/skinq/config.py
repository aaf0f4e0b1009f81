import json
import os
from typing import Any, Dict

from .errors import ConfigError

_DEFAULT_DATA_DIR = os.path.join(os.path.expanduser("~"), ".local", "share", "skinq")
_CONFIG_FILE = os.path.join(_DEFAULT_DATA_DIR, "config.json")
_CONFIG_CACHE: Dict[str, str] | None = None

OUTPUT_DIR_ENV = "SKINQ_OUTPUT_DIR"


def _load_config() -> Dict[str, str]:
    global _CONFIG_CACHE
    if _CONFIG_CACHE is not None:
        return _CONFIG_CACHE

    cache: Dict[str, str] = {}
    if os.path.exists(_CONFIG_FILE):
        try:
            with open(_CONFIG_FILE, "r", encoding="utf-8") as f:
                cache = json.load(f)
        except Exception as e:
            print(f"Error: cannot load config file {_CONFIG_FILE}: {e}")

    _CONFIG_CACHE = cache
    return cache


def _save_config(cfg: Dict[str, str]) -> None:
    global _CONFIG_CACHE
    os.makedirs(os.path.dirname(_CONFIG_FILE), exist_ok=True)

    with open(_CONFIG_FILE, "w", encoding="utf-8") as f:
        json.dump(cfg, f, indent=2, sort_keys=True)
    _CONFIG_CACHE = cfg


def get_config(key: str, default: str = "") -> str:
    cfg = _load_config()
    return cfg.get(key, default)


def set_config(key: str, value: str) -> None:
    cfg = _load_config()
    cfg[key] = value
    _save_config(cfg)


def get_output_dir() -> str:
    """SKINQ_OUTPUT_DIR, then the `outdir` setting, then the data directory."""
    env_dir = os.environ.get(OUTPUT_DIR_ENV, "").strip()
    if env_dir:
        return env_dir
    outdir = get_config("outdir")
    if outdir and os.path.isabs(outdir):
        return outdir
    return os.path.join(_DEFAULT_DATA_DIR, "results")


def resolve_output_path(path: str | None, default_name: str) -> str:
    if not path:
        return os.path.join(get_output_dir(), default_name)
    if os.path.isabs(path) or os.path.dirname(path):
        return path
    return os.path.join(get_output_dir(), path)


def load_sweep_file(path: str) -> Dict[str, Any]:
    """Read a flat JSON object of sweep options."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read sweep file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"sweep file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"sweep file {path} must contain a JSON object")
    return data
