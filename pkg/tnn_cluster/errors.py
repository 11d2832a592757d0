"""
Exception hierarchy for tnn-cluster.

Every module raises a subclass of TnnError so callers (and the CLI) can tell
bad input apart from internal failures.
"""


class TnnError(Exception):
    """Base exception for tnn-cluster errors."""
    pass


class ConfigError(TnnError):
    """Raised when a configuration violates one of its invariants."""

    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        super().__init__(f"{invariant}: {message}")


class DatasetError(TnnError):
    """Raised when a dataset file or generator request is malformed."""
    pass


class ShapeError(TnnError):
    """Raised when array lengths or shapes do not line up."""
    pass


class EncodingError(TnnError):
    """Raised when encoder inputs are not finite or cannot be fitted."""
    pass


class EvaluationError(TnnError):
    """Raised when a clustering metric is undefined for its inputs."""
    pass


class CalibrationError(TnnError):
    """Raised when hardware calibration points cannot determine a fit."""
    pass


class ModelFormatError(TnnError):
    """Raised when a model or column snapshot file cannot be parsed."""
    pass


# Errors caused by what the user handed us; the CLI maps these to exit code 2.
INPUT_ERRORS = (ConfigError, DatasetError, ShapeError, EncodingError, ModelFormatError, CalibrationError)
