"""Tests for the stochastic integer STDP rule."""

import math
from fractions import Fraction

import numpy as np
import pytest

from tnn_cluster.config import StdpParams
from tnn_cluster.errors import ShapeError
from tnn_cluster.learning import StdpRng, apply_stdp, stabilizer_neg, stabilizer_pos, stdp_delta
from tnn_cluster.network import TnnColumn

PARAMS = StdpParams()
T_MAX, W_MAX = 16, 7
TRIALS = 10_000

# (row, t_in, t_out); 16 = no spike
CASES = [
    ("input only", 3, 16),
    ("causal", 3, 5),
    ("causal, same step", 4, 4),
    ("anti-causal", 5, 3),
    ("output only", 16, 3),
    ("silent", 16, 16),
]
# interior weights, so a single +-1 step is never clamped
WEIGHTS = [1, 3, 6]


def expected_delta(t_in: int, t_out: int, w: int) -> Fraction:
    """Closed-form E[delta w] of the update table."""
    gate_pos = 1 - (1 - stabilizer_pos(w, W_MAX)) * (1 - PARAMS.pi_min)
    gate_neg = 1 - (1 - stabilizer_neg(w, W_MAX)) * (1 - PARAMS.pi_min)
    in_spike, out_spike = t_in < T_MAX, t_out < T_MAX
    if in_spike and not out_spike:
        return PARAMS.pi_s
    if in_spike and out_spike:
        return PARAMS.pi_c * gate_pos if t_in <= t_out else -PARAMS.pi_c * gate_neg
    if out_spike:
        return -PARAMS.pi_b * gate_neg
    return Fraction(0)


def one_synapse_column(w: int, neurons: int) -> TnnColumn:
    return TnnColumn(weights=np.full((neurons, 1), w, dtype=np.int64), theta=1, t_max=T_MAX, w_max=W_MAX)


def test_stabilizer_values():
    assert stabilizer_pos(3, 7) == Fraction(33, 49)
    assert stabilizer_neg(3, 7) == Fraction(40, 49)
    assert (stabilizer_pos(0, 7), stabilizer_pos(7, 7)) == (0, 1)
    assert (stabilizer_neg(0, 7), stabilizer_neg(7, 7)) == (1, 0)


def test_update_table_expectations():
    """Empirical mean over 10^4 independent synapses sits within 3 standard errors of the closed form."""
    for counter, ((row, t_in, t_out), w) in enumerate((c, w) for c in CASES for w in WEIGHTS):
        column = one_synapse_column(w, TRIALS)
        rng = StdpRng(seed=99, counter=counter)
        updated = apply_stdp(column, np.array([t_in]), np.full(TRIALS, t_out), PARAMS, rng)
        deltas = updated.weights[:, 0] - w
        assert set(np.unique(deltas)) <= {-1, 0, 1}

        expected = expected_delta(t_in, t_out, w)
        p = abs(float(expected))
        if p == 0:
            assert (deltas == 0).all(), row
            continue
        stderr = math.sqrt(p * (1 - p) / TRIALS) if p < 1 else 0.0
        assert abs(deltas.mean() - float(expected)) <= 3 * stderr + 1e-12, (row, w, deltas.mean(), float(expected))


def test_single_synapse_delta_matches_sign_of_row():
    rng = StdpRng(seed=1)
    for row, t_in, t_out in CASES:
        for w in WEIGHTS:
            delta = stdp_delta(t_in, t_out, w, PARAMS, rng, T_MAX, W_MAX)
            expected = expected_delta(t_in, t_out, w)
            assert delta in (-1, 0, 1)
            if delta:
                assert (delta > 0) == (expected > 0), row
    assert rng.counter == 0


def test_certain_updates():
    always = StdpParams(pi_s=Fraction(1, 4), pi_c=Fraction(1, 2), pi_b=Fraction(1), pi_min=Fraction(1))
    rng = StdpRng(seed=0)
    # output-only row with pi_b = 1 and pi_min = 1 always depresses
    assert stdp_delta(16, 2, 4, always, rng, T_MAX, W_MAX) == -1
    # causal row at w = w_max: S_P = 1 but X_c may still be 0
    assert stdp_delta(2, 2, 7, always, rng, T_MAX, W_MAX) in (0, 1)


def test_single_synapse_delta_follows_the_given_clock():
    certain = StdpParams(pi_s=Fraction(1, 4), pi_c=Fraction(1), pi_b=Fraction(1), pi_min=Fraction(1))
    rng = StdpRng(seed=0)
    # 8 is a real spike on a 16-step clock and the no-spike time on an 8-step one
    assert stdp_delta(8, 8, 3, certain, rng, t_max=16, w_max=7) == 1
    assert stdp_delta(8, 8, 3, certain, rng, t_max=8, w_max=7) == 0
    with pytest.raises(TypeError):
        stdp_delta(8, 8, 3, certain, rng)


def test_weights_stay_clamped_under_fuzzing():
    """10^5 synapse updates with random spike patterns, including the extremes."""
    gen = np.random.default_rng(3)
    column = TnnColumn.random(10, 100, theta=200, t_max=T_MAX, w_max=W_MAX, rng=gen)
    rng = StdpRng(seed=3)
    for _ in range(100):
        spikes = gen.choice([0, 1, 5, 15, 16], size=100)
        wta = gen.choice([0, 8, 16], size=10)
        before = column.weights
        column = apply_stdp(column, spikes, wta, PARAMS, rng)
        assert column.weights.min() >= 0 and column.weights.max() <= W_MAX
        assert np.abs(column.weights - before).max() <= 1
    assert rng.counter == 100


def test_edges_clamp():
    rng = StdpRng(seed=4)
    top = apply_stdp(one_synapse_column(7, 1000), np.array([3]), np.full(1000, 16), PARAMS, rng)
    assert (top.weights == 7).all()
    bottom = apply_stdp(one_synapse_column(0, 1000), np.array([16]), np.full(1000, 3), PARAMS, rng)
    assert (bottom.weights == 0).all()


def test_silence_is_a_fixed_point():
    column = TnnColumn.random(5, 40, theta=10, t_max=T_MAX, w_max=W_MAX, rng=np.random.default_rng(0))
    updated = apply_stdp(column, np.full(40, 16), np.full(5, 16), PARAMS, StdpRng(seed=0))
    assert updated == column


def test_updates_are_keyed_by_seed_and_counter():
    column = TnnColumn.random(4, 32, theta=10, t_max=T_MAX, w_max=W_MAX, rng=np.random.default_rng(1))
    spikes = np.random.default_rng(2).integers(0, 17, size=32)
    wta = np.array([5, 16, 16, 16])

    def run(seed, counter):
        return apply_stdp(column, spikes, wta, PARAMS, StdpRng(seed=seed, counter=counter))

    assert run(7, 12) == run(7, 12)
    assert run(7, 12) != run(7, 13)
    assert run(7, 12) != run(8, 12)


def test_rng_draw_frequency_and_advance():
    rng = StdpRng(seed=5)
    bits = rng.draw(Fraction(1, 4), size=40_000)
    assert set(np.unique(bits)) <= {0, 1}
    assert abs(bits.mean() - 0.25) < 0.01
    first = rng.draw(Fraction(1, 2), size=64)
    rng.advance()
    assert rng.counter == 1
    assert not np.array_equal(first, rng.draw(Fraction(1, 2), size=64))


def test_shape_checks():
    column = one_synapse_column(3, 2)
    with pytest.raises(ShapeError):
        apply_stdp(column, np.array([1, 2]), np.array([3, 16]), PARAMS, StdpRng(seed=0))
    with pytest.raises(ShapeError):
        apply_stdp(column, np.array([1]), np.array([3]), PARAMS, StdpRng(seed=0))
