"""
Ramp-no-leak integrate-and-fire dynamics with 1-WTA lateral inhibition.

The body potential of neuron k is v_k(t) = sum_j rho(t - t_j, w_kj), evaluated
at the integer steps t = 0..t_max-1. Potentials never decay, so the first step
with v_k(t) >= theta is the neuron's spike time; a neuron that never crosses
within the window reports t_max. Potentials are not carried between samples.
"""

import numpy as np

from ..errors import ShapeError
from .base import ForwardResult, TnnColumn


def response(t: int, w: int) -> int:
    """rho(t, w): 0 before the input spike, then a unit ramp that saturates at w."""
    if t < 0:
        return 0
    return t if t < w else w


def potential_trace(spikes: np.ndarray, column: TnnColumn) -> np.ndarray:
    """C x t_max matrix of body potentials v_k(t) for t = 0..t_max-1."""
    spikes = np.asarray(spikes, dtype=np.int64)
    if spikes.shape != (column.synapses,):
        raise ShapeError(f"spike vector has shape {spikes.shape}, column expects ({column.synapses},)")

    steps = np.arange(column.t_max, dtype=np.int64)
    elapsed = steps[:, None] - spikes[None, :]
    # no-spike inputs (t_max) contribute nothing inside the window
    elapsed[:, spikes >= column.t_max] = -1
    ramp = np.clip(elapsed, 0, None)
    return np.minimum(ramp[None, :, :], column.weights[:, None, :]).sum(axis=2)


def forward(spikes: np.ndarray, column: TnnColumn) -> ForwardResult:
    """One forward pass: raw first-crossing times, then 1-WTA.

    The earliest spike propagates (lowest index on ties). With no spike at
    all, the neuron with the largest final potential wins, again lowest index
    on ties, and every post-WTA time stays t_max.
    """
    trace = potential_trace(spikes, column)
    crossed = trace >= column.theta
    fired = crossed.any(axis=1)
    raw_times = np.where(fired, crossed.argmax(axis=1), column.t_max).astype(np.int64)
    potentials_at_end = trace[:, -1].copy()

    wta_times = np.full(column.num_neurons, column.t_max, dtype=np.int64)
    t_min = int(raw_times.min())
    if t_min < column.t_max:
        winner = int(np.argmax(raw_times == t_min))
        wta_times[winner] = t_min
    else:
        winner = int(np.argmax(potentials_at_end))

    return ForwardResult(
        raw_times=raw_times,
        wta_times=wta_times,
        winner=winner,
        potentials_at_end=potentials_at_end,
        t_max=column.t_max,
    )


def assign_cluster(result: ForwardResult) -> tuple[int, int]:
    """Cluster id and confidence time (earlier is more confident; t_max means no spike)."""
    return result.winner, int(result.wta_times[result.winner])
