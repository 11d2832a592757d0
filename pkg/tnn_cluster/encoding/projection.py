"""
Sparse ternary random projection.

Entries are +1 / 0 / -1 with probabilities 1/6, 2/3, 1/6. The sqrt(3) factor of
the classic construction is dropped: the receptive-field encoder normalizes
every projected column by its own range, so a uniform positive scale cancels.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ShapeError
from ..utils.rng import Stream, generator_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProjectionMatrix:
    """L x ell ternary matrix, reconstructible from (L, ell, seed)."""

    entries: np.ndarray
    seed: int

    @property
    def signal_length(self) -> int:
        return int(self.entries.shape[0])

    @property
    def reduced_length(self) -> int:
        return int(self.entries.shape[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectionMatrix):
            return NotImplemented
        return self.seed == other.seed and np.array_equal(self.entries, other.entries)


def make_projection(signal_length: int, reduced_length: int, seed: int) -> ProjectionMatrix:
    """Draw the projection matrix for (L, ell, seed).

    Raises:
        ShapeError: if ell > L or either dimension is not positive
    """
    if signal_length < 1 or reduced_length < 1:
        raise ShapeError(f"projection dimensions must be positive, got L={signal_length}, ell={reduced_length}")
    if reduced_length > signal_length:
        raise ShapeError(f"reduced length {reduced_length} exceeds signal length {signal_length}")

    # one die roll per entry: 0 -> +1, 1 -> -1, 2..5 -> 0
    rolls = generator_for(seed, Stream.PROJECTION).integers(0, 6, size=(signal_length, reduced_length))
    entries = np.zeros((signal_length, reduced_length), dtype=np.int8)
    entries[rolls == 0] = 1
    entries[rolls == 1] = -1
    entries.setflags(write=False)
    logger.debug("Built %dx%d projection (seed=%d, nonzero=%d)", signal_length, reduced_length, seed,
                 int(np.count_nonzero(entries)))
    return ProjectionMatrix(entries=entries, seed=seed)


def project(signal: np.ndarray, projection: ProjectionMatrix) -> np.ndarray:
    """Project one signal (length L) or a batch (N x L) onto ell dimensions."""
    signal = np.asarray(signal, dtype=np.float64)
    if signal.ndim not in (1, 2) or signal.shape[-1] != projection.signal_length:
        raise ShapeError(f"signal shape {signal.shape} does not match projection length {projection.signal_length}")
    matrix = projection.entries.astype(np.float64)
    if signal.ndim == 1:
        return signal @ matrix
    # row by row, so batch and streaming projections agree bit for bit
    return np.stack([row @ matrix for row in signal]) if len(signal) else np.zeros((0, projection.reduced_length))
