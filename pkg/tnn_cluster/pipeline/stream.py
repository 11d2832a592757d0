"""
Online clustering: one signal at a time, optionally learning as it goes.

The projection matrix never changes once drawn. With learning on, the
receptive-field ranges widen to cover every signal seen and the weights take
one STDP step per signal, keyed by the model's sample counter so a stream of
the training set replays an unshuffled training epoch exactly.
"""

import logging
from collections import deque
from dataclasses import replace

import numpy as np

from ..encoding.projection import project
from ..encoding.receptive_fields import encode, update_running_range
from ..errors import EncodingError, EvaluationError, ShapeError
from ..evaluation.metrics import ClusteringPair, rand_index
from ..learning.stdp import StdpRng, apply_stdp
from ..network.column import assign_cluster, forward
from .trainer import TrainedModel

logger = logging.getLogger(__name__)


def stream_step(model: TrainedModel, signal: np.ndarray, learn: bool) -> tuple[int, int, TrainedModel]:
    """Cluster one signal; returns (cluster, confidence_time, updated model).

    Without `learn` the returned model is the input model object itself.

    Raises:
        EncodingError: non-finite values in the signal
        ShapeError: signal length differs from the model
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.shape != (model.config.signal_length,):
        raise ShapeError(f"signal has shape {x.shape}, model expects ({model.config.signal_length},)")
    if not np.all(np.isfinite(x)):
        raise EncodingError("signal contains non-finite values")

    projected = project(x, model.projection)
    bank = update_running_range(model.bank, projected) if learn else model.bank
    spikes = encode(projected, bank, model.config.t_max)
    result = forward(spikes, model.column)
    cluster, confidence = assign_cluster(result)
    if not learn:
        return cluster, confidence, model

    rng = StdpRng(model.config.rng_seed, model.samples_seen)
    column = apply_stdp(model.column, spikes, result.wta_times, model.config.stdp, rng)
    return cluster, confidence, replace(model, bank=bank, column=column, samples_seen=rng.counter)


class DriftMonitor:
    """Trailing-window Rand Index over labelled (label, cluster) pairs."""

    def __init__(self, window: int = 50):
        if window < 2:
            raise EvaluationError(f"window must hold at least 2 samples, got {window}")
        self.window = window
        self._labels: deque[int] = deque(maxlen=window)
        self._clusters: deque[int] = deque(maxlen=window)

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def full(self) -> bool:
        return len(self) == self.window

    def record(self, label: int, cluster: int) -> float | None:
        """Add one pair; returns the windowed RI once at least two pairs are held."""
        self._labels.append(int(label))
        self._clusters.append(int(cluster))
        return self.rand_index()

    def rand_index(self) -> float | None:
        if len(self) < 2:
            return None
        return float(rand_index(ClusteringPair(labels=np.asarray(self._labels), clusters=np.asarray(self._clusters))))
