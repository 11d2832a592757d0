"""Tests for random projection, receptive-field encoding and the spike dump format."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tnn_cluster.encoding import (
    DEGENERATE_NEURON,
    ProjectionMatrix,
    ReceptiveFieldBank,
    encode,
    fit_receptive_fields,
    format_spike_dump,
    make_projection,
    parse_spike_dump,
    project,
    update_running_range,
)
from tnn_cluster.errors import EncodingError, ShapeError

GAMMA = Fraction(3, 2)
T_MAX = 16

# One feature on [0, 6] with E=8: sigma = 1.5, centers -2.25, -0.75, ..., 8.25.
GOLDEN_RANGE = np.array([[0.0], [6.0]])
GOLDEN_CASES = [
    (0.75, "14 6 0 6 14 16 16 16"),
    (-0.75, "6 0 6 14 16 16 16 16"),
    (3.0, "16 15 11 2 2 11 15 16"),
]


@pytest.fixture(scope="module")
def golden_bank():
    return fit_receptive_fields(GOLDEN_RANGE, 8, GAMMA)


def test_projection_is_seeded_and_ternary():
    first = make_projection(64, 8, seed=3)
    assert first.entries.shape == (64, 8)
    assert set(np.unique(first.entries)) <= {-1, 0, 1}
    assert first == make_projection(64, 8, seed=3)
    assert first != make_projection(64, 8, seed=4)
    assert not first.entries.flags.writeable


def test_projection_entry_frequencies():
    entries = make_projection(300, 100, seed=0).entries
    assert abs(np.mean(entries == 1) - 1 / 6) < 0.01
    assert abs(np.mean(entries == -1) - 1 / 6) < 0.01
    assert abs(np.mean(entries == 0) - 2 / 3) < 0.01


def test_projection_shape_errors():
    with pytest.raises(ShapeError):
        make_projection(8, 9, seed=0)
    with pytest.raises(ShapeError):
        make_projection(8, 0, seed=0)
    with pytest.raises(ShapeError):
        project(np.zeros(7), make_projection(8, 1, seed=0))


def test_batch_projection_matches_single_rows():
    projection = make_projection(32, 4, seed=1)
    batch = np.random.default_rng(0).normal(size=(10, 32))
    projected = project(batch, projection)
    assert projected.shape == (10, 4)
    for row, expected in zip(batch, projected):
        np.testing.assert_array_equal(project(row, projection), expected)


def test_projection_is_linear_and_selects_coordinates():
    np.testing.assert_array_equal(project(np.zeros(32), make_projection(32, 4, seed=5)), np.zeros(4))
    entries = np.zeros((32, 1), dtype=np.int8)
    entries[7, 0] = 1
    selector = ProjectionMatrix(entries=entries, seed=0)
    signal = np.arange(32.0) * 0.5 - 3.0
    np.testing.assert_array_equal(project(signal, selector), [signal[7]])


def test_projection_roughly_preserves_distances():
    points = np.random.default_rng(11).normal(size=(20, 256))
    # nonzero entries have variance 1/3, so sqrt(3 / ell) restores the expected length
    projected = project(points, make_projection(256, 64, seed=2)) * math.sqrt(3 / 64)
    ratios = [
        np.linalg.norm(projected[a] - projected[b]) / np.linalg.norm(points[a] - points[b])
        for a in range(20)
        for b in range(a + 1, 20)
    ]
    within = np.mean([0.6 <= r <= 1.4 for r in ratios])
    assert within >= 0.9, within


def test_golden_spike_dump(golden_bank):
    np.testing.assert_allclose(golden_bank.sigma, [1.5])
    np.testing.assert_allclose(golden_bank.centers[0], [-2.25, -0.75, 0.75, 2.25, 3.75, 5.25, 6.75, 8.25])
    for x, expected in GOLDEN_CASES:
        spikes = encode(np.array([x]), golden_bank, T_MAX)
        assert format_spike_dump([spikes]) == expected + "\n", x


def test_encoding_layout_is_feature_major():
    data = np.array([[0.0, 10.0], [6.0, 20.0]])
    bank = fit_receptive_fields(data, 4, GAMMA)
    spikes = encode(np.array([3.0, 10.0]), bank, T_MAX)
    assert spikes.shape == (8,)
    np.testing.assert_array_equal(spikes[:4], encode(np.array([3.0]), fit_receptive_fields(data[:, :1], 4, GAMMA), T_MAX))
    np.testing.assert_array_equal(spikes[4:], encode(np.array([10.0]), fit_receptive_fields(data[:, 1:], 4, GAMMA), T_MAX))


def test_shifting_a_column_shifts_its_centers():
    data = np.random.default_rng(4).normal(size=(30, 3))
    bank = fit_receptive_fields(data, 8, GAMMA)
    shifted = fit_receptive_fields(data + 4.25, 8, GAMMA)
    np.testing.assert_allclose(shifted.centers, bank.centers + 4.25)
    np.testing.assert_allclose(shifted.sigma, bank.sigma)


def test_uniform_scale_does_not_change_spikes():
    rng = np.random.default_rng(7)
    data = rng.normal(size=(40, 6))
    scale = math.sqrt(3)
    plain = encode(data, fit_receptive_fields(data, 8, GAMMA), T_MAX)
    scaled = encode(data * scale, fit_receptive_fields(data * scale, 8, GAMMA), T_MAX)
    np.testing.assert_array_equal(plain, scaled)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-20, 20, allow_nan=False),
    st.floats(-20, 20, allow_nan=False),
    st.integers(0, 7),
)
def test_spike_time_grows_with_distance_from_center(a, b, j):
    bank = fit_receptive_fields(GOLDEN_RANGE, 8, GAMMA)
    mu = bank.centers[0, j]
    near, far = sorted([a, b], key=lambda x: abs(x - mu))
    t_near = encode(np.array([near]), bank, T_MAX)[j]
    t_far = encode(np.array([far]), bank, T_MAX)[j]
    assert 0 <= t_near <= t_far <= T_MAX


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=20), st.floats(0, 1))
def test_in_range_inputs_always_fire_early(column, position):
    data = np.asarray(column)[:, None]
    spread = data.max() - data.min()
    # ranges a few ulps wide cannot place the centers precisely
    assume(spread == 0 or spread > 1e-6)
    bank = fit_receptive_fields(data, 8, GAMMA)
    x = data.min() + position * (data.max() - data.min())
    spikes = encode(np.array([x]), bank, T_MAX)
    # nearest center is at most sigma/2 away: t <= round(16 * (1 - exp(-1/8))) = 2
    assert spikes.min() <= 2


def test_degenerate_column_emits_fixed_pattern(caplog):
    data = np.array([[1.0, 0.0], [1.0, 5.0]])
    bank = fit_receptive_fields(data, 8, GAMMA)
    assert bank.degenerate.tolist() == [True, False]
    assert "constant" in caplog.text
    spikes = encode(np.array([42.0, 2.5]), bank, T_MAX)
    expected = np.full(8, T_MAX)
    expected[DEGENERATE_NEURON] = 0
    np.testing.assert_array_equal(spikes[:8], expected)


def test_encoder_input_errors(golden_bank):
    with pytest.raises(EncodingError):
        encode(np.array([np.nan]), golden_bank, T_MAX)
    with pytest.raises(ShapeError):
        encode(np.array([1.0, 2.0]), golden_bank, T_MAX)
    with pytest.raises(EncodingError):
        fit_receptive_fields(np.zeros((0, 3)), 8, GAMMA)
    with pytest.raises(EncodingError):
        fit_receptive_fields(np.ones((4, 3)), 2, GAMMA)
    with pytest.raises(EncodingError):
        fit_receptive_fields(np.array([[np.inf]]), 8, GAMMA)


def test_running_range_only_widens(golden_bank):
    assert update_running_range(golden_bank, np.array([3.0])) is golden_bank
    widened = update_running_range(golden_bank, np.array([9.0]))
    assert widened.x_max.tolist() == [9.0]
    assert widened.x_min.tolist() == [0.0]
    assert golden_bank.x_max.tolist() == [6.0]


def test_empty_bank_learns_from_first_points():
    bank = ReceptiveFieldBank.empty(2, 8, GAMMA)
    assert bank.degenerate.all()
    bank = update_running_range(bank, np.array([1.0, 2.0]))
    assert bank.degenerate.all()
    bank = update_running_range(bank, np.array([3.0, 2.0]))
    assert bank.degenerate.tolist() == [False, True]
    np.testing.assert_allclose(bank.sigma, [0.5, 0.0])


def test_spike_dump_text():
    text = format_spike_dump([np.array([0, 16, 3]), np.array([4, 5, 16])])
    assert text == "0 16 3\n4 5 16\n"
    np.testing.assert_array_equal(parse_spike_dump(text, T_MAX), [[0, 16, 3], [4, 5, 16]])
    assert format_spike_dump([]) == ""
    with pytest.raises(ShapeError):
        parse_spike_dump("1 2\n3\n", T_MAX)
    with pytest.raises(ShapeError):
        parse_spike_dump("1 17\n", T_MAX)


def test_streamed_ranges_match_batch_fit(two_tone_train):
    projection = make_projection(two_tone_train.signal_length, 8, seed=0)
    projected = project(two_tone_train.samples, projection)
    bank = ReceptiveFieldBank.empty(8, 8, GAMMA)
    for row in projected:
        bank = update_running_range(bank, row)
    batch = fit_receptive_fields(projected, 8, GAMMA)
    assert bank == batch
    np.testing.assert_array_equal(encode(projected, bank, T_MAX), encode(projected, batch, T_MAX))
