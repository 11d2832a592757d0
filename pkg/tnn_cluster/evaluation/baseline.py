"""K-means reference clustering on raw (un-projected) signals."""

import logging
import warnings

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from ..data.loader import Dataset
from ..errors import EvaluationError

logger = logging.getLogger(__name__)

DEFAULT_RESTARTS = 10
DEFAULT_MAX_ITER = 100


def kmeans_baseline(
    data: Dataset | np.ndarray,
    k: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """Lloyd's K-means with random-point initialization, best of `restarts` by inertia.

    Returns the cluster index of every row. Deterministic per seed.

    Raises:
        EvaluationError: k or restarts not positive, or k > N
    """
    points = data.samples if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
    if points.ndim != 2:
        raise EvaluationError(f"K-means needs an N x L matrix, got shape {points.shape}")
    if k < 1 or restarts < 1:
        raise EvaluationError(f"k and restarts must be positive, got k={k}, restarts={restarts}")
    if k > len(points):
        raise EvaluationError(f"k = {k} exceeds the number of samples ({len(points)})")

    km = KMeans(
        n_clusters=k,
        init="random",
        n_init=restarts,
        max_iter=max_iter,
        tol=0,
        random_state=seed % 2**32,
        algorithm="lloyd",
    )
    # duplicate points can leave fewer than k distinct clusters; that is a valid outcome here
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        clusters = km.fit_predict(points)
    logger.debug("K-means k=%d: inertia=%.6g after %d iterations", k, km.inertia_, km.n_iter_)
    return clusters.astype(np.int64)
