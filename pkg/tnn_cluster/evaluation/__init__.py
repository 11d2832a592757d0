"""Clustering quality: Rand Index, K-means baseline and results reporting."""

from .baseline import kmeans_baseline
from .metrics import ClusteringPair, normalized_ri, pair_counts, rand_index
from .report import DatasetResult, format_results_table, results_frame, write_results

__all__ = [
    "ClusteringPair",
    "DatasetResult",
    "format_results_table",
    "kmeans_baseline",
    "normalized_ri",
    "pair_counts",
    "rand_index",
    "results_frame",
    "write_results",
]
