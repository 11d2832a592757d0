"""
Clustering agreement metrics.

The Rand Index counts sample pairs on which a clustering agrees with the
ground truth: alpha pairs share both a label and a cluster, beta pairs differ
in both. RI = (alpha + beta) / (N (N - 1) / 2).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sklearn.metrics.cluster import pair_confusion_matrix

from ..errors import EvaluationError


@dataclass(frozen=True, eq=False)
class ClusteringPair:
    """Ground-truth labels and predicted clusters for the same N samples."""

    labels: np.ndarray
    clusters: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", np.asarray(self.labels).ravel())
        object.__setattr__(self, "clusters", np.asarray(self.clusters).ravel())
        if len(self.labels) != len(self.clusters):
            raise EvaluationError(f"{len(self.labels)} labels but {len(self.clusters)} cluster assignments")

    @property
    def size(self) -> int:
        return len(self.labels)


def pair_counts(pair: ClusteringPair) -> tuple[int, int, int]:
    """(alpha, beta, total pairs).

    Raises:
        EvaluationError: fewer than two samples
    """
    n = pair.size
    if n < 2:
        raise EvaluationError(f"Rand Index needs at least 2 samples, got {n}")
    # sklearn counts ordered pairs, so every unordered pair appears twice
    confusion = pair_confusion_matrix(pair.labels, pair.clusters)
    alpha = int(confusion[1, 1]) // 2
    beta = int(confusion[0, 0]) // 2
    return alpha, beta, n * (n - 1) // 2


def rand_index(pair: ClusteringPair) -> Fraction:
    """Exact Rand Index in [0, 1]."""
    alpha, beta, total = pair_counts(pair)
    return Fraction(alpha + beta, total)


def normalized_ri(tnn_ri: Fraction | float, kmeans_ri: Fraction | float) -> Fraction:
    """TNN Rand Index relative to the K-means baseline."""
    if kmeans_ri <= 0:
        raise EvaluationError(f"cannot normalize by a baseline Rand Index of {kmeans_ri}")
    return Fraction(tnn_ri) / Fraction(kmeans_ri)
