"""
Configuration system for holomatch.

Supports configuration via TOML file and environment variables.
"""

import copy
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import tomli
    TOMLI_AVAILABLE = True
except ImportError:
    try:
        import tomllib
        TOMLI_AVAILABLE = True
        tomli = tomllib  # Python 3.11+ has tomllib built-in
    except ImportError:
        TOMLI_AVAILABLE = False

from .types import ConfigError

# Default configuration
DEFAULT_CONFIG = {
    'caps': {
        'mgi_exhaustive_arity': 12,
        'mgi_samples': 4096,
        'holant_states': 1 << 24,
        'bruteforce_vertices': 24,
        'domain_entries': 1 << 20,
    },
    'harness': {
        'default_seed': 42,
        'trials': 100,
        'eq_trials': 50,
        'fkt_trials': 500,
        'mgi_trials': 200,
        'holant_trials': 100,
        'grid_trials': 50,
        'factor_trials': 100,
    },
    'evidence': {
        'default_dir': './evidence',
        'write_markdown': True,
    },
}

CONFIG_FILENAME = 'holomatch.toml'

_explicit_path: Optional[Path] = None
_overrides: Dict[str, Dict[str, Any]] = {}


def load_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """Load configuration from TOML file and environment variables.

    Configuration is loaded in this order (later overrides earlier):
    1. Default configuration
    2. TOML file (if exists)
    3. Environment variables
    4. Overrides installed by the CLI (``--cap``, ``--config``)

    Environment variables use format: HOLOMATCH_<SECTION>_<KEY>
    Example: HOLOMATCH_CAPS_MGI_EXHAUSTIVE_ARITY

    The parsed file is cached per (path, modification time).

    Args:
        config_path: Path to config file (default: holomatch.toml in current dir)

    Returns:
        Configuration dictionary

    Raises:
        ConfigError: The file cannot be read or is not valid TOML.
    """
    config = copy.deepcopy(DEFAULT_CONFIG)

    if config_path is None:
        config_path = find_config_file()

    if config_path and Path(config_path).exists() and TOMLI_AVAILABLE:
        path = Path(config_path)
        toml_config = _read_toml(path.resolve(), path.stat().st_mtime_ns)
        for section, values in copy.deepcopy(toml_config).items():
            if section in config and isinstance(values, dict):
                config[section].update(values)
            else:
                config[section] = values

    for section, values in config.items():
        if not isinstance(values, dict):
            continue
        for key in list(values.keys()):
            env_key = f"HOLOMATCH_{section.upper()}_{key.upper()}"
            env_value = os.getenv(env_key)
            if env_value is None:
                continue
            original_value = values[key]
            if isinstance(original_value, bool):
                config[section][key] = env_value.lower() in ('true', '1', 'yes', 'on')
            elif isinstance(original_value, int):
                try:
                    config[section][key] = int(env_value)
                except ValueError:
                    pass
            else:
                config[section][key] = env_value

    for section, values in _overrides.items():
        config.setdefault(section, {}).update(values)

    return config


@lru_cache(maxsize=8)
def _read_toml(path: Path, mtime_ns: int) -> Dict[str, Any]:
    try:
        with open(path, 'rb') as f:
            return tomli.load(f)
    except tomli.TOMLDecodeError as e:
        raise ConfigError(f"{path}: invalid TOML: {e}") from e
    except OSError as e:
        raise ConfigError(f"{path}: cannot read config file: {e}") from e


def find_config_file() -> Optional[Path]:
    """The explicit config path if set, else the nearest holomatch.toml (cwd and three parents)."""
    if _explicit_path is not None:
        return _explicit_path
    current = Path.cwd()
    for path in [current] + list(current.parents)[:3]:
        candidate = path / CONFIG_FILENAME
        if candidate.exists():
            return candidate
    return None


def use_config_file(path: Optional[Path]) -> None:
    """Make ``path`` the config file for subsequent lookups (None restores discovery)."""
    global _explicit_path
    _explicit_path = Path(path) if path is not None else None


def set_override(section: str, key: str, value: Any) -> None:
    _overrides.setdefault(section, {})[key] = value


def clear_overrides() -> None:
    _overrides.clear()
    use_config_file(None)


def get_config_value(section: str, key: str, default: Any = None) -> Any:
    """Get a configuration value.

    Args:
        section: Configuration section (e.g., 'caps')
        key: Configuration key (e.g., 'holant_states')
        default: Default value if not found

    Returns:
        Configuration value
    """
    config = load_config()
    return config.get(section, {}).get(key, default)


# Convenience functions
def get_cap(name: str) -> int:
    """Get an enumeration cap from the [caps] section."""
    return int(get_config_value('caps', name, DEFAULT_CONFIG['caps'].get(name)))


def get_trials(name: str = 'trials') -> int:
    """Get a harness trial count from the [harness] section."""
    return int(get_config_value('harness', name, DEFAULT_CONFIG['harness']['trials']))


def get_default_seed() -> int:
    """Get default seed."""
    return int(get_config_value('harness', 'default_seed', 42))


def get_evidence_dir() -> str:
    """Get default evidence directory."""
    return get_config_value('evidence', 'default_dir', './evidence')
