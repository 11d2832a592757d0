"""
Core TNN column types.

This module defines the excitatory column (C ramp-no-leak neurons sharing E*ell
input synapses) and the result of one forward pass.
"""

from dataclasses import dataclass, replace

import numpy as np

from ..errors import ShapeError


@dataclass(frozen=True, eq=False)
class TnnColumn:
    """C x synapses integer weights in [0, w_max] plus the firing threshold."""

    weights: np.ndarray
    theta: int
    t_max: int
    w_max: int

    def __post_init__(self):
        if self.weights.ndim != 2:
            raise ShapeError(f"weights must be a C x synapses matrix, got shape {self.weights.shape}")
        if self.weights.size and (self.weights.min() < 0 or self.weights.max() > self.w_max):
            raise ShapeError(f"weights must lie in [0, {self.w_max}]")
        self.weights.setflags(write=False)

    @classmethod
    def random(
        cls, num_neurons: int, synapses: int, theta: int, t_max: int, w_max: int, rng: np.random.Generator
    ) -> "TnnColumn":
        """Independent uniform integer weights in [0, w_max]."""
        weights = rng.integers(0, w_max + 1, size=(num_neurons, synapses), dtype=np.int64)
        return cls(weights=weights, theta=theta, t_max=t_max, w_max=w_max)

    @property
    def num_neurons(self) -> int:
        return int(self.weights.shape[0])

    @property
    def synapses(self) -> int:
        return int(self.weights.shape[1])

    def with_weights(self, weights: np.ndarray) -> "TnnColumn":
        return replace(self, weights=np.asarray(weights, dtype=np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TnnColumn):
            return NotImplemented
        return (
            (self.theta, self.t_max, self.w_max) == (other.theta, other.t_max, other.w_max)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class ForwardResult:
    """Raw and post-1-WTA output spike times of one forward pass."""

    raw_times: np.ndarray
    wta_times: np.ndarray
    winner: int
    potentials_at_end: np.ndarray
    t_max: int

    @property
    def spiked(self) -> bool:
        """False when no neuron fired and the winner came from the max-potential fallback."""
        return bool(self.wta_times[self.winner] < self.t_max)
