"""Shared exception types."""


class CapacityError(Exception):
    """A requested state or matrix would exceed a size guard."""


class ConfigError(Exception):
    """A run configuration file is syntactically or semantically invalid."""
