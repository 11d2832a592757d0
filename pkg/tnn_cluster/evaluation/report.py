"""
Per-dataset results records: JSON lines on disk, an aligned text table on screen.
"""

from collections.abc import Iterable
from dataclasses import asdict, dataclass
from pathlib import Path

import pandas as pd

from ..utils.serialization import safe_json_dumps

TABLE_COLUMNS = ["name", "tnn_ri", "kmeans_ri", "normalized_ri", "epochs", "converged", "seed"]


@dataclass(frozen=True)
class DatasetResult:
    name: str
    tnn_ri: float
    kmeans_ri: float
    normalized_ri: float
    epochs: int
    seed: int
    converged: bool = False
    mean_confidence_time: float = 0.0
    spike_rate: float = 0.0
    num_samples: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return safe_json_dumps(self.to_dict())


def write_results(results: Iterable[DatasetResult], path: str | Path) -> Path:
    """One JSON object per dataset, one per line."""
    path = Path(path)
    path.write_text("".join(r.to_json() + "\n" for r in results), encoding="utf-8")
    return path


def results_frame(results: Iterable[DatasetResult]) -> pd.DataFrame:
    return pd.DataFrame([r.to_dict() for r in results], columns=list(DatasetResult.__dataclass_fields__))


def format_results_table(results: Iterable[DatasetResult]) -> str:
    """Aligned text table plus the mean normalized RI."""
    frame = results_frame(results)
    if frame.empty:
        return "(no datasets)"
    table = frame[TABLE_COLUMNS].to_string(index=False, float_format=lambda v: f"{v:.4f}")
    return f"{table}\n\nmean normalized RI: {frame['normalized_ri'].mean():.4f}"
