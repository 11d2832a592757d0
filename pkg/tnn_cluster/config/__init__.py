"""Configuration package for tnn-cluster."""

from .settings import (
    StdpParams,
    TnnConfig,
    ValidatedConfig,
    load_config_file,
    parse_config_text,
    resolve_for_dataset,
    validate,
)

__all__ = [
    "StdpParams",
    "TnnConfig",
    "ValidatedConfig",
    "load_config_file",
    "parse_config_text",
    "resolve_for_dataset",
    "validate",
]
