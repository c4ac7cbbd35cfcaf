import logging
import os

from .base import ConfigurationError

DEFAULT_MAX_WORKERS = 1
DEFAULT_CACHE_SIZE = 64
DEFAULT_REPORT_MAX_N = 8

MAX_WORKERS_ENV = "PREMODEL_MAX_WORKERS"
CACHE_SIZE_ENV = "PREMODEL_CACHE_SIZE"
LOG_LEVEL_ENV = "PREMODEL_LOG_LEVEL"

_LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
}


def _positive_int(value, name):
    try:
        ivalue = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if ivalue < 1:
        raise ConfigurationError(f"{name} must be at least 1, got {ivalue}")
    return ivalue


def resolve_max_workers(max_workers=None):
    """Decide how many worker threads an exhaustive sweep may use

    Parameters
    ----------
    max_workers : int or None, optional
        Explicit worker count. If None, falls back to the PREMODEL_MAX_WORKERS
        environment variable, then to DEFAULT_MAX_WORKERS.

    Returns
    -------
    int
        A worker count of at least 1.
    """
    if max_workers is not None:
        return _positive_int(max_workers, "max_workers")
    env_value = os.environ.get(MAX_WORKERS_ENV)
    if env_value:
        return _positive_int(env_value, MAX_WORKERS_ENV)
    return DEFAULT_MAX_WORKERS


def resolve_cache_size(cache_size=None):
    """Same lookup order as resolve_max_workers, for the enumeration cache size"""
    if cache_size is not None:
        return _positive_int(cache_size, "cache_size")
    env_value = os.environ.get(CACHE_SIZE_ENV)
    if env_value:
        return _positive_int(env_value, CACHE_SIZE_ENV)
    return DEFAULT_CACHE_SIZE


def resolve_log_level(verbose=0):
    """Logging level for the command line

    ``-v`` and ``-vv`` win over PREMODEL_LOG_LEVEL, which wins over WARNING.
    """
    if verbose:
        return logging.INFO if verbose == 1 else logging.DEBUG
    env_value = os.environ.get(LOG_LEVEL_ENV)
    if env_value:
        try:
            return _LOG_LEVELS[env_value.strip().upper()]
        except KeyError:
            raise ConfigurationError(
                f"{LOG_LEVEL_ENV} must be one of {', '.join(_LOG_LEVELS)}, got {env_value!r}"
            )
    return logging.WARNING
