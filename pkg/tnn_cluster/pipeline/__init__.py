"""Training, inference, streaming and model persistence."""

from .persistence import format_model, load_model, parse_model, save_model
from .stream import DriftMonitor, stream_step
from .trainer import EpochStats, TrainedModel, init_model, predict, train

__all__ = [
    "DriftMonitor",
    "EpochStats",
    "TrainedModel",
    "format_model",
    "init_model",
    "load_model",
    "parse_model",
    "predict",
    "save_model",
    "stream_step",
    "train",
]
