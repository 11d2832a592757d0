"""
Stochastic integer STDP.

Each synapse (input j, neuron k) moves by at most one step per sample:

    input spikes, output silent          +X_s
    both spike, t_in <= t_out            +X_c * max(S_P(w), X_min)
    both spike, t_in >  t_out            -X_c * max(S_N(w), X_min)
    input silent, output spikes          -X_b * max(S_N(w), X_min)
    both silent                           0

X_* are Bernoulli draws with the StdpParams probabilities. S_P / S_N are
Bernoulli draws whose probabilities depend on the current weight and push
weights toward 0 or w_max. max() of two bits is their OR. Weights are clamped
to [0, w_max] after every update. Output times are the post-1-WTA times, so
losing neurons follow the first and last rows.
"""

import logging
from fractions import Fraction

import numpy as np

from ..config.settings import StdpParams
from ..errors import ShapeError
from ..network.base import TnnColumn
from ..utils.rng import Stream, generator_for

logger = logging.getLogger(__name__)


class StdpRng:
    """Counter-based Bernoulli source.

    Draws for sample number n come from their own generator keyed by
    (seed, STDP stream, n), so the bits for a sample depend only on the seed
    and how many samples were learned before it.
    """

    def __init__(self, seed: int, counter: int = 0):
        self.seed = int(seed)
        self.counter = int(counter)
        self._generator: np.random.Generator | None = None

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            self._generator = generator_for(self.seed, Stream.STDP, self.counter)
        return self._generator

    def advance(self) -> None:
        """Move to the next sample's stream."""
        self.counter += 1
        self._generator = None

    def draw(self, p: Fraction | float, size: int | tuple[int, ...] | None = None) -> np.ndarray:
        """Bernoulli(p) bits as integer comparisons: uniform u in [0, den) is a hit when u < num."""
        p = Fraction(p)
        return self.bernoulli(np.asarray(p.numerator), p.denominator, size)

    def bernoulli(self, numerators: np.ndarray, denominator: int, size=None) -> np.ndarray:
        """Element-wise Bernoulli(numerators / denominator) bits."""
        shape = np.shape(numerators) if size is None else size
        draws = self.generator.integers(0, denominator, size=shape, dtype=np.int64)
        return (draws < numerators).astype(np.int64)


def stabilizer_pos(w: int, w_max: int) -> Fraction:
    """P[S_P(w) = 1] = (w / w_max) * (2 - w / w_max)."""
    return Fraction(w * (2 * w_max - w), w_max * w_max)


def stabilizer_neg(w: int, w_max: int) -> Fraction:
    """P[S_N(w) = 1] = (1 - w / w_max) * (1 + w / w_max)."""
    return Fraction(w_max * w_max - w * w, w_max * w_max)


def _deltas(
    t_in: np.ndarray,
    t_out: np.ndarray,
    weights: np.ndarray,
    params: StdpParams,
    rng: StdpRng,
    t_max: int,
    w_max: int,
) -> np.ndarray:
    """Signed unit updates for broadcast-compatible (t_in, t_out, weights)."""
    shape = weights.shape
    in_spike = np.broadcast_to(t_in < t_max, shape)
    out_spike = np.broadcast_to(t_out < t_max, shape)
    causal = np.broadcast_to(t_in <= t_out, shape)

    # fixed draw order; every synapse gets its own fresh bit per variable
    x_s = rng.draw(params.pi_s, shape)
    x_c = rng.draw(params.pi_c, shape)
    x_b = rng.draw(params.pi_b, shape)
    x_min = rng.draw(params.pi_min, shape)
    scale = w_max * w_max
    s_p = rng.bernoulli(weights * (2 * w_max - weights), scale)
    s_n = rng.bernoulli(scale - weights * weights, scale)

    grow = s_p | x_min
    shrink = s_n | x_min
    delta = np.zeros(shape, dtype=np.int64)
    delta += (in_spike & ~out_spike) * x_s
    delta += (in_spike & out_spike & causal) * x_c * grow
    delta -= (in_spike & out_spike & ~causal) * x_c * shrink
    delta -= (~in_spike & out_spike) * x_b * shrink
    return delta


def stdp_delta(
    t_in: int,
    t_out: int,
    w: int,
    params: StdpParams,
    rng: StdpRng,
    t_max: int,
    w_max: int,
) -> int:
    """Unclamped update (-1, 0 or +1) for a single synapse; `t_max` is the no-spike time."""
    delta = _deltas(
        np.asarray(t_in, dtype=np.int64),
        np.asarray(t_out, dtype=np.int64),
        np.asarray(w, dtype=np.int64),
        params,
        rng,
        t_max,
        w_max,
    )
    return int(delta)


def apply_stdp(
    column: TnnColumn,
    spikes: np.ndarray,
    wta_times: np.ndarray,
    params: StdpParams,
    rng: StdpRng,
) -> TnnColumn:
    """Update every synapse of every neuron for one sample and clamp to [0, w_max].

    Consumes one sample's worth of STDP draws and advances `rng`.
    """
    spikes = np.asarray(spikes, dtype=np.int64)
    wta_times = np.asarray(wta_times, dtype=np.int64)
    if spikes.shape != (column.synapses,):
        raise ShapeError(f"spike vector has shape {spikes.shape}, column expects ({column.synapses},)")
    if wta_times.shape != (column.num_neurons,):
        raise ShapeError(f"output times have shape {wta_times.shape}, column has {column.num_neurons} neurons")

    delta = _deltas(
        spikes[None, :],
        wta_times[:, None],
        column.weights,
        params,
        rng,
        column.t_max,
        column.w_max,
    )
    rng.advance()
    return column.with_weights(np.clip(column.weights + delta, 0, column.w_max))
