"""
Configuration Module

Loads the packaged YAML defaults, merges an optional user file over them
and applies environment overrides. Also configures logging for the
ncmckay logger tree.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).with_name("ncmckay_config.yaml")
MAX_UNKNOWNS_ENV = "NCMCKAY_MAX_UNKNOWNS"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _read_yaml(config_path: Path) -> Dict[str, Any]:
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to load config from {config_path}: {e}") from e
    if not isinstance(config, dict):
        raise ConfigError(f"Config file {config_path} must contain a mapping")
    return config


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def resolve(value: Optional[int], fallback: int) -> int:
    """A request value when given, else the configured fallback."""
    return fallback if value is None else value


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load the effective configuration.

    Args:
        config_path: Optional user YAML file merged over the packaged defaults

    Returns:
        Configuration dictionary

    Raises:
        ConfigError: when a file cannot be read or an override is malformed
    """
    config = _read_yaml(DEFAULT_CONFIG_PATH)
    if config_path:
        config = _merge(config, _read_yaml(Path(config_path)))

    env_limit = os.environ.get(MAX_UNKNOWNS_ENV)
    if env_limit:
        try:
            config.setdefault('limits', {})['max_unknowns'] = int(env_limit)
        except ValueError as e:
            raise ConfigError(f"{MAX_UNKNOWNS_ENV} must be an integer, got {env_limit!r}") from e
    return config


def setup_logging(config: Dict[str, Any]) -> logging.Logger:
    """Configure the ncmckay logger from the logging section."""
    log_config = config.get('logging', {})
    logger = logging.getLogger('ncmckay')
    if not log_config.get('enabled', True):
        logger.addHandler(logging.NullHandler())
        return logger

    level = getattr(logging, str(log_config.get('level', 'INFO')).upper(), logging.INFO)
    logger.setLevel(level)
    formatter = logging.Formatter(LOG_FORMAT)
    if not any(isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
               for h in logger.handlers):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    log_file = log_config.get('file')
    if log_file:
        file_handler = logging.FileHandler(log_file, mode='a', encoding='utf-8')
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    return logger
