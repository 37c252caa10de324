"""Toolkit configuration: rule-set location, time zone, analysis defaults.

Config is a small YAML file; every key is optional and falls back to the
built-in defaults below. The cache directory comes from the CLI flag or
the COUPLEKIT_CACHE environment variable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigError

CACHE_ENV_VAR = "COUPLEKIT_CACHE"


@dataclass(frozen=True)
class Defaults:
    period: int = 7
    max_lag: int = 7
    min_overlap: int = 8
    alphabet_size: int = 5
    word_length: int | None = None   # None: one symbol per week in the window
    trend_threshold: float = 0.3
    preprocessing: str = "adjusted"


@dataclass(frozen=True)
class Config:
    rules_path: Path | None = None
    timezone: str = "UTC"
    defaults: Defaults = field(default_factory=Defaults)


def load_config(path: str | Path | None = None) -> Config:
    """Read a config file; a missing path means all defaults."""
    if path is None:
        return Config()
    doc = yaml.safe_load(Path(path).read_text("utf-8")) or {}
    if not isinstance(doc, dict):
        raise ConfigError("config file must be a YAML mapping")
    base = Path(path).parent
    rules_path = doc.get("rules")
    if rules_path is not None:
        rules_path = Path(rules_path)
        if not rules_path.is_absolute():
            rules_path = base / rules_path
    overrides = doc.get("defaults") or {}
    if not isinstance(overrides, dict):
        raise ConfigError("'defaults' must be a mapping")
    known = {f for f in Defaults.__dataclass_fields__}
    unknown = set(overrides) - known
    if unknown:
        raise ConfigError(f"unknown default keys: {', '.join(sorted(unknown))}")
    return Config(
        rules_path=rules_path,
        timezone=str(doc.get("timezone", "UTC")),
        defaults=Defaults(**overrides),
    )


def resolve_cache_dir(flag_value: str | None) -> Path:
    """Cache directory from the flag, else the environment."""
    if flag_value:
        return Path(flag_value)
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    raise ConfigError(f"no cache directory: pass --cache or set {CACHE_ENV_VAR}")
