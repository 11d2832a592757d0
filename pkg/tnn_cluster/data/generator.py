"""
Synthetic signal generator.

Produces the seeded two-tone fixture used for desk-scale acceptance runs and
regime-shift streams for online-learning experiments.
"""

import logging
from pathlib import Path

import numpy as np

from ..errors import DatasetError
from ..utils.rng import Stream, generator_for
from .loader import Dataset, write_ucr

logger = logging.getLogger(__name__)

MIN_SIGNAL_LENGTH = 16


class SignalGenerator:
    """Noisy sinusoid generator; one tone per class."""

    def __init__(
        self,
        signal_length: int,
        seed: int = 0,
        low_cycles: int = 2,
        high_cycles: int = 6,
        noise: float = 0.1,
        phase_jitter: float = 0.1,
        amplitude_jitter: float = 0.05,
    ):
        if signal_length < MIN_SIGNAL_LENGTH:
            raise DatasetError(f"two-tone signals need L >= {MIN_SIGNAL_LENGTH}, got {signal_length}")
        if not 0 < low_cycles < high_cycles < signal_length / 2:
            raise DatasetError(
                f"tones must satisfy 0 < low < high < L/2 cycles, got low={low_cycles} high={high_cycles}"
            )
        self.signal_length = signal_length
        self.seed = seed
        self.low_cycles = low_cycles
        self.high_cycles = high_cycles
        self.noise = noise
        self.phase_jitter = phase_jitter
        self.amplitude_jitter = amplitude_jitter
        self._rng: np.random.Generator | None = None
        self._time_axis: np.ndarray | None = None

    @property
    def rng(self) -> np.random.Generator:
        """Generator for the synthetic stream (lazy)."""
        if self._rng is None:
            self._rng = generator_for(self.seed, Stream.SYNTHETIC)
        return self._rng

    @property
    def time_axis(self) -> np.ndarray:
        if self._time_axis is None:
            self._time_axis = np.arange(self.signal_length) / self.signal_length
        return self._time_axis

    def tone(self, cycles: int) -> np.ndarray:
        """One noisy sinusoid with `cycles` periods over the signal."""
        phase = self.rng.uniform(-self.phase_jitter, self.phase_jitter)
        amplitude = 1.0 + self.rng.uniform(-self.amplitude_jitter, self.amplitude_jitter)
        clean = amplitude * np.sin(2 * np.pi * cycles * self.time_axis + phase)
        return clean + self.rng.normal(0.0, self.noise, self.signal_length)

    def generate(self, n_per_class: int, swapped: bool = False, name: str = "two_tone") -> Dataset:
        """Balanced two-class dataset with classes interleaved (0, 1, 0, 1, ...).

        With `swapped`, class 0 carries the high tone and class 1 the low tone.
        """
        if n_per_class < 1:
            raise DatasetError(f"n_per_class must be positive, got {n_per_class}")
        tones = (self.high_cycles, self.low_cycles) if swapped else (self.low_cycles, self.high_cycles)
        rows = []
        labels = []
        for _ in range(n_per_class):
            for label, cycles in enumerate(tones):
                rows.append(self.tone(cycles))
                labels.append(label)
        return Dataset(
            samples=np.vstack(rows),
            labels=np.asarray(labels, dtype=np.int64),
            name=name,
            num_classes=2,
            raw_labels=(0, 1),
        )

    def regime_shift(self, n_before: int, n_after: int) -> tuple[Dataset, int]:
        """A stream whose tones swap between classes after `2 * n_before` samples.

        Returns the concatenated dataset and the index of the first post-shift sample.
        """
        before = self.generate(n_before)
        after = self.generate(n_after, swapped=True)
        stream = Dataset(
            samples=np.vstack([before.samples, after.samples]),
            labels=np.concatenate([before.labels, after.labels]),
            name="two_tone_shift",
            num_classes=2,
            raw_labels=(0, 1),
        )
        return stream, before.size

    def generate_and_save(self, n_per_class: int, path: str | Path) -> Path:
        """Generate the fixture and write it in UCR TSV format."""
        dataset = self.generate(n_per_class)
        write_ucr(dataset, path)
        logger.info("Wrote %d two-tone samples (L=%d) to %s", dataset.size, self.signal_length, path)
        return Path(path)


def synth_two_tone(
    n_per_class: int,
    signal_length: int,
    seed: int = 0,
    low_cycles: int = 2,
    high_cycles: int = 6,
) -> Dataset:
    """Seeded two-class dataset of noisy sinusoids with well-separated frequencies."""
    generator = SignalGenerator(signal_length, seed=seed, low_cycles=low_cycles, high_cycles=high_cycles)
    return generator.generate(n_per_class)
