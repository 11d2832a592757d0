"""
Batch training and inference.

train() fits the projection and receptive fields on the training split, then
runs epochs of (seeded shuffle, forward, STDP) until the weights settle or
max_epochs is reached. predict() is pure inference: the cluster of a sample
is the index of the neuron that wins the 1-WTA.
"""

import logging
from dataclasses import asdict, dataclass

import numpy as np

from ..config.settings import ValidatedConfig
from ..data.loader import Dataset
from ..encoding.projection import ProjectionMatrix, make_projection, project
from ..encoding.receptive_fields import ReceptiveFieldBank, encode, fit_receptive_fields
from ..errors import DatasetError, ShapeError
from ..learning.stdp import StdpRng, apply_stdp
from ..network.base import TnnColumn
from ..network.column import assign_cluster, forward
from ..utils.rng import Stream, generator_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TrainedModel:
    """Everything needed to encode, cluster and keep learning."""

    projection: ProjectionMatrix
    bank: ReceptiveFieldBank
    column: TnnColumn
    config: ValidatedConfig
    epochs_run: int = 0
    converged: bool = False
    samples_seen: int = 0  # STDP sample counter; keys the next sample's random stream

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrainedModel):
            return NotImplemented
        return (
            self.projection == other.projection
            and self.bank == other.bank
            and self.column == other.column
            and self.config == other.config
            and (self.epochs_run, self.converged, self.samples_seen)
            == (other.epochs_run, other.converged, other.samples_seen)
        )

    def encode(self, signals: np.ndarray) -> np.ndarray:
        """Spike vectors for an N x L batch, one row per sample."""
        return encode_signals(signals, self.projection, self.bank, self.config.t_max)


@dataclass(frozen=True)
class EpochStats:
    """Per-epoch training summary (one JSON object per epoch in the metrics stream)."""

    epoch: int
    weights_changed_frac: float
    mode_flip_frac: float
    spike_rate: float
    win_counts: tuple[int, ...]

    def to_dict(self) -> dict:
        record = asdict(self)
        record["win_counts"] = list(self.win_counts)
        return record


def encode_signals(signals: np.ndarray, projection: ProjectionMatrix, bank: ReceptiveFieldBank, t_max: int) -> np.ndarray:
    projected = project(np.atleast_2d(signals), projection)
    # per sample, matching the streaming path exactly
    return np.stack([encode(row, bank, t_max) for row in projected]) if len(projected) else np.zeros(
        (0, bank.spike_count), dtype=np.int64
    )


def _check_dataset(ds: Dataset, cfg: ValidatedConfig) -> None:
    if ds.size == 0:
        raise DatasetError(f"{ds.name}: dataset is empty")
    if ds.signal_length != cfg.signal_length:
        raise ShapeError(f"{ds.name}: signals have length {ds.signal_length}, config expects {cfg.signal_length}")


def init_model(train_ds: Dataset, cfg: ValidatedConfig) -> TrainedModel:
    """Fit projection and receptive fields on the training split; draw initial weights."""
    _check_dataset(train_ds, cfg)
    projection = make_projection(cfg.signal_length, cfg.ell, cfg.rng_seed)
    bank = fit_receptive_fields(project(train_ds.samples, projection), cfg.encoding_neurons, cfg.gamma)
    column = TnnColumn.random(
        cfg.num_clusters,
        cfg.synapses_per_neuron,
        cfg.theta,
        cfg.t_max,
        cfg.w_max,
        generator_for(cfg.rng_seed, Stream.WEIGHT_INIT),
    )
    return TrainedModel(projection=projection, bank=bank, column=column, config=cfg)


def mode_flips(before: np.ndarray, after: np.ndarray, w_max: int) -> np.ndarray:
    """Synapses that moved between the low half and the high half of [0, w_max]."""
    return (2 * before >= w_max) != (2 * after >= w_max)


def run_epoch(
    column: TnnColumn,
    spikes: np.ndarray,
    order: np.ndarray,
    cfg: ValidatedConfig,
    rng: StdpRng,
    epoch: int,
) -> tuple[TnnColumn, EpochStats]:
    """One online pass over `spikes` in `order`, updating weights after every sample."""
    start = column.weights
    touched = np.zeros(start.shape, dtype=bool)
    wins = np.zeros(column.num_neurons, dtype=np.int64)
    fired = 0
    for index in order:
        sample = spikes[index]
        result = forward(sample, column)
        wins[result.winner] += 1
        fired += result.spiked
        updated = apply_stdp(column, sample, result.wta_times, cfg.stdp, rng)
        touched |= updated.weights != column.weights
        column = updated

    count = max(len(order), 1)
    stats = EpochStats(
        epoch=epoch,
        weights_changed_frac=float(touched.mean()),
        mode_flip_frac=float(mode_flips(start, column.weights, cfg.w_max).mean()),
        spike_rate=fired / count,
        win_counts=tuple(int(w) for w in wins),
    )
    return column, stats


def train(train_ds: Dataset, cfg: ValidatedConfig) -> tuple[TrainedModel, list[EpochStats]]:
    """Train until the convergence metric drops below cfg.convergence_frac or max_epochs runs out.

    Raises:
        DatasetError: empty dataset
        ShapeError: signal length differs from the config
    """
    model = init_model(train_ds, cfg)
    spikes = model.encode(train_ds.samples)
    rng = StdpRng(cfg.rng_seed, model.samples_seen)
    column = model.column
    history: list[EpochStats] = []
    converged = False

    for epoch in range(1, cfg.max_epochs + 1):
        if cfg.shuffle:
            order = generator_for(cfg.rng_seed, Stream.SHUFFLE, epoch).permutation(train_ds.size)
        else:
            order = np.arange(train_ds.size)
        column, stats = run_epoch(column, spikes, order, cfg, rng, epoch)
        history.append(stats)
        logger.info(
            "epoch %d: changed=%.4f flips=%.4f spike_rate=%.3f wins=%s",
            stats.epoch, stats.weights_changed_frac, stats.mode_flip_frac, stats.spike_rate, list(stats.win_counts),
        )
        metric = stats.mode_flip_frac if cfg.convergence_metric == "mode_flips" else stats.weights_changed_frac
        if metric < cfg.convergence_frac:
            converged = True
            logger.info("Converged after %d epochs (%s=%.4f)", epoch, cfg.convergence_metric, metric)
            break
    else:
        if cfg.max_epochs:
            logger.info("Stopped at max_epochs=%d without convergence", cfg.max_epochs)

    trained = TrainedModel(
        projection=model.projection,
        bank=model.bank,
        column=column,
        config=cfg,
        epochs_run=len(history),
        converged=converged,
        samples_seen=rng.counter,
    )
    return trained, history


def predict(model: TrainedModel, ds: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """Cluster ids and confidence times for every sample; weights are untouched."""
    if ds.signal_length != model.config.signal_length:
        raise ShapeError(
            f"{ds.name}: signals have length {ds.signal_length}, model expects {model.config.signal_length}"
        )
    clusters = np.zeros(ds.size, dtype=np.int64)
    confidence = np.zeros(ds.size, dtype=np.int64)
    for i, sample in enumerate(model.encode(ds.samples) if ds.size else []):
        clusters[i], confidence[i] = assign_cluster(forward(sample, model.column))
    return clusters, confidence
