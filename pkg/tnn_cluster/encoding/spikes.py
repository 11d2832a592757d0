"""Plain-text spike dump: one line per sample, E*ell space-separated integers."""

from collections.abc import Iterable

import numpy as np

from ..errors import ShapeError


def format_spike_dump(spike_vectors: Iterable[np.ndarray]) -> str:
    lines = [" ".join(str(int(t)) for t in np.asarray(vector).ravel()) for vector in spike_vectors]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_spike_dump(text: str, t_max: int) -> np.ndarray:
    rows = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    if len({len(row) for row in rows}) != 1:
        raise ShapeError("spike dump rows have different lengths")
    times = np.asarray(rows, dtype=np.int64)
    if times.min() < 0 or times.max() > t_max:
        raise ShapeError(f"spike times must lie in [0, {t_max}]")
    return times
