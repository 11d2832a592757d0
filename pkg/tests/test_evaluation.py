"""Tests for the Rand Index, the K-means baseline and results reporting."""

import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tnn_cluster.evaluation import (
    ClusteringPair,
    DatasetResult,
    format_results_table,
    kmeans_baseline,
    normalized_ri,
    pair_counts,
    rand_index,
    write_results,
)
from tnn_cluster.errors import EvaluationError

NORMALIZED_CASES = [
    # (tnn, kmeans, expected)
    (Fraction(1, 2), Fraction(1, 2), Fraction(1)),
    (Fraction(9, 10), Fraction(3, 5), Fraction(3, 2)),
    (Fraction(0), Fraction(1, 4), Fraction(0)),
    (0.75, 0.5, Fraction(3, 2)),
]

RESULTS = [
    DatasetResult(name="Coffee", tnn_ri=0.74, kmeans_ri=0.5, normalized_ri=1.48, epochs=12, seed=0, converged=True),
    DatasetResult(name="ECG200", tnn_ri=0.6, kmeans_ri=0.6, normalized_ri=1.0, epochs=50, seed=0),
]

label_lists = st.lists(st.integers(0, 4), min_size=2, max_size=40)


def ri(labels, clusters) -> Fraction:
    return rand_index(ClusteringPair(labels=np.asarray(labels), clusters=np.asarray(clusters)))


def ri_by_enumeration(labels, clusters) -> Fraction:
    agree = sum(
        (labels[i] == labels[j]) == (clusters[i] == clusters[j])
        for i, j in itertools.combinations(range(len(labels)), 2)
    )
    return Fraction(agree, len(labels) * (len(labels) - 1) // 2)


def test_hand_example():
    assert ri([0, 0, 1, 1], [0, 1, 1, 1]) == Fraction(1, 2)
    assert pair_counts(ClusteringPair(labels=np.array([0, 0, 1, 1]), clusters=np.array([0, 1, 1, 1]))) == (1, 2, 6)


def test_perfect_and_permuted_clusterings():
    labels = [0, 0, 1, 1, 2, 2]
    assert ri(labels, labels) == 1
    assert ri(labels, [2, 2, 0, 0, 1, 1]) == 1
    assert ri([0, 1], [5, 5]) == 0


def test_matches_pair_enumeration():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(2, 201))
        labels = rng.integers(0, int(rng.integers(1, 6)), size=n)
        clusters = rng.integers(0, int(rng.integers(1, 6)), size=n)
        assert ri(labels, clusters) == ri_by_enumeration(labels, clusters)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_bounds_and_symmetry(data):
    labels = data.draw(label_lists)
    clusters = data.draw(st.lists(st.integers(0, 4), min_size=len(labels), max_size=len(labels)))
    value = ri(labels, clusters)
    assert 0 <= value <= 1
    assert value == ri(clusters, labels)
    assert ri(labels, labels) == 1


def test_rand_index_errors():
    with pytest.raises(EvaluationError):
        ri([0], [0])
    with pytest.raises(EvaluationError):
        ClusteringPair(labels=np.array([0, 1, 1]), clusters=np.array([0, 1]))


def test_normalized_ri():
    for tnn, kmeans, expected in NORMALIZED_CASES:
        assert normalized_ri(tnn, kmeans) == expected
    with pytest.raises(EvaluationError):
        normalized_ri(Fraction(1, 2), 0)


def test_kmeans_separates_two_clouds():
    rng = np.random.default_rng(0)
    points = np.vstack([rng.normal(-5, 0.1, size=(20, 3)), rng.normal(5, 0.1, size=(20, 3))])
    truth = np.repeat([0, 1], 20)
    clusters = kmeans_baseline(points, 2, seed=1)
    assert clusters.dtype == np.int64
    assert ri(truth, clusters) == 1


def test_kmeans_is_deterministic(two_tone_train):
    first = kmeans_baseline(two_tone_train, 2, seed=4)
    np.testing.assert_array_equal(first, kmeans_baseline(two_tone_train, 2, seed=4))
    assert first.shape == (two_tone_train.size,)


def test_kmeans_with_one_point_per_cluster():
    points = np.arange(12, dtype=np.float64).reshape(4, 3)
    clusters = kmeans_baseline(points, 4, seed=0)
    assert sorted(clusters.tolist()) == [0, 1, 2, 3]


def test_kmeans_argument_checks():
    points = np.zeros((3, 2))
    for kwargs in [{"k": 4}, {"k": 0}, {"k": 2, "restarts": 0}]:
        with pytest.raises(EvaluationError):
            kmeans_baseline(points, **kwargs)
    with pytest.raises(EvaluationError):
        kmeans_baseline(np.zeros(5), 2)


def test_results_table():
    table = format_results_table(RESULTS)
    assert "Coffee" in table and "ECG200" in table
    assert table.endswith("mean normalized RI: 1.2400")
    assert format_results_table([]) == "(no datasets)"


def test_results_json_lines(tmp_path):
    path = write_results(RESULTS, tmp_path / "results.jsonl")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first["name"] == "Coffee"
    assert first["converged"] is True
    assert first == RESULTS[0].to_dict()
