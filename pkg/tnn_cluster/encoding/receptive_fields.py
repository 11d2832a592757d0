"""
Gaussian receptive-field population coding (intensity to latency).

Each projected feature x_i is covered by E Gaussian fields. Field j of column i
has width sigma_i = gamma * (x_max_i - x_min_i) / (E - 2) and center
mu_ij = x_min_i + ((2j - 3) / 2) * sigma_i for j = 0..E-1. The field's
response f = exp(-((x - mu) / sigma)^2 / 2) becomes the spike time
round(t_max * (1 - f)); t_max itself means "no spike".
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from ..errors import EncodingError, ShapeError

logger = logging.getLogger(__name__)

# Neuron that carries the fixed t=0 spike of a zero-width column.
DEGENERATE_NEURON = 2


@dataclass(frozen=True, eq=False)
class ReceptiveFieldBank:
    """Per-column ranges; widths and centers are derived from them."""

    x_min: np.ndarray
    x_max: np.ndarray
    gamma: Fraction
    encoding_neurons: int

    @classmethod
    def empty(cls, reduced_length: int, encoding_neurons: int, gamma: Fraction) -> "ReceptiveFieldBank":
        """A bank with no observations yet; the first streamed point fixes every range."""
        return cls(
            x_min=np.full(reduced_length, np.inf),
            x_max=np.full(reduced_length, -np.inf),
            gamma=Fraction(gamma),
            encoding_neurons=encoding_neurons,
        )

    @property
    def reduced_length(self) -> int:
        return int(self.x_min.shape[0])

    @property
    def spike_count(self) -> int:
        return self.reduced_length * self.encoding_neurons

    @property
    def degenerate(self) -> np.ndarray:
        """Columns with zero width (constant feature, nothing observed, or a range too narrow to resolve)."""
        return ~(self.sigma > 0)

    @property
    def sigma(self) -> np.ndarray:
        width = np.where(self.x_max > self.x_min, self.x_max - self.x_min, 0.0)
        return float(self.gamma) * width / (self.encoding_neurons - 2)

    @property
    def centers(self) -> np.ndarray:
        """ell x E matrix of mu_ij."""
        offsets = (2 * np.arange(self.encoding_neurons) - 3) / 2
        base = np.where(np.isfinite(self.x_min), self.x_min, 0.0)
        return base[:, None] + offsets[None, :] * self.sigma[:, None]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReceptiveFieldBank):
            return NotImplemented
        return (
            self.gamma == other.gamma
            and self.encoding_neurons == other.encoding_neurons
            and np.array_equal(self.x_min, other.x_min)
            and np.array_equal(self.x_max, other.x_max)
        )


def fit_receptive_fields(train_projected: np.ndarray, encoding_neurons: int, gamma: Fraction) -> ReceptiveFieldBank:
    """Fit per-column ranges over the (projected) training split.

    Raises:
        EncodingError: empty input, non-finite values, or E < 3
    """
    data = np.asarray(train_projected, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 1:
        raise EncodingError(f"need an N x ell matrix with N >= 1, got shape {data.shape}")
    if encoding_neurons < 3:
        raise EncodingError(f"E must be at least 3 (sigma divides by E-2), got {encoding_neurons}")
    if not np.all(np.isfinite(data)):
        raise EncodingError("projected training data contains non-finite values")

    bank = ReceptiveFieldBank(
        x_min=data.min(axis=0),
        x_max=data.max(axis=0),
        gamma=Fraction(gamma),
        encoding_neurons=encoding_neurons,
    )
    flat = int(bank.degenerate.sum())
    if flat:
        logger.warning("%d of %d projected columns are constant; they emit a fixed spike pattern",
                       flat, bank.reduced_length)
    return bank


def _round_half_away(values: np.ndarray) -> np.ndarray:
    # inputs are non-negative here
    return np.floor(values + 0.5).astype(np.int64)


def encode(projected: np.ndarray, bank: ReceptiveFieldBank, t_max: int) -> np.ndarray:
    """Spike times for one projected sample (length ell) or a batch (N x ell).

    The result has E * ell entries per sample, column-major over features:
    index i * E + j holds the spike of field j of feature i.
    """
    x = np.asarray(projected, dtype=np.float64)
    if x.shape[-1] != bank.reduced_length:
        raise ShapeError(f"sample has {x.shape[-1]} features, bank expects {bank.reduced_length}")
    if not np.all(np.isfinite(x)):
        raise EncodingError("projected sample contains non-finite values")

    degenerate = bank.degenerate
    sigma = np.where(degenerate, 1.0, bank.sigma)
    distance = (x[..., :, None] - bank.centers) / sigma[:, None]
    response = np.exp(-0.5 * distance * distance)
    times = np.clip(_round_half_away(t_max * (1.0 - response)), 0, t_max)

    if degenerate.any():
        fixed = np.full(bank.encoding_neurons, t_max, dtype=np.int64)
        fixed[DEGENERATE_NEURON] = 0
        times[..., degenerate, :] = fixed

    return times.reshape(*x.shape[:-1], bank.spike_count)


def update_running_range(bank: ReceptiveFieldBank, projected: np.ndarray) -> ReceptiveFieldBank:
    """Widen column ranges to include one new projected point (streaming mode)."""
    x = np.asarray(projected, dtype=np.float64)
    if x.shape != (bank.reduced_length,):
        raise ShapeError(f"expected {bank.reduced_length} features, got shape {x.shape}")
    x_min = np.minimum(bank.x_min, x)
    x_max = np.maximum(bank.x_max, x)
    if np.array_equal(x_min, bank.x_min) and np.array_equal(x_max, bank.x_max):
        return bank
    return replace(bank, x_min=x_min, x_max=x_max)
