"""
UCR-archive dataset loading.

One sample per line: the class label, then L values. Tab, comma and whitespace
separated files are told apart by looking at the first non-blank line.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from ..errors import DatasetError

logger = logging.getLogger(__name__)

SPLIT_MODES = ("train_test_files", "whole")


@dataclass(frozen=True, eq=False)
class Dataset:
    """N fixed-length univariate signals plus ground-truth labels remapped to 0..num_classes-1."""

    samples: np.ndarray
    labels: np.ndarray
    name: str
    num_classes: int
    raw_labels: tuple = field(default=())

    def __post_init__(self):
        # private read-only copies; the caller's arrays stay writeable
        object.__setattr__(self, "samples", np.array(self.samples, dtype=np.float64))
        object.__setattr__(self, "labels", np.array(self.labels, dtype=np.int64))
        if self.samples.ndim != 2:
            raise DatasetError(f"{self.name}: samples must be an N x L matrix, got shape {self.samples.shape}")
        if not np.all(np.isfinite(self.samples)):
            raise DatasetError(f"{self.name}: samples contain missing or non-finite values")
        if len(self.labels) != len(self.samples):
            raise DatasetError(f"{self.name}: {len(self.labels)} labels for {len(self.samples)} samples")
        self.samples.setflags(write=False)
        self.labels.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.samples.shape[0])

    @property
    def signal_length(self) -> int:
        return int(self.samples.shape[1])

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.name == other.name
            and self.num_classes == other.num_classes
            and self.raw_labels == other.raw_labels
            and np.array_equal(self.samples, other.samples)
            and np.array_equal(self.labels, other.labels)
        )

    def z_normalized(self) -> "Dataset":
        """Per-series z-normalization; constant series are centred only."""
        mean = self.samples.mean(axis=1, keepdims=True)
        std = self.samples.std(axis=1, keepdims=True)
        std = np.where(std > 0, std, 1.0)
        return Dataset(
            samples=(self.samples - mean) / std,
            labels=self.labels.copy(),
            name=self.name,
            num_classes=self.num_classes,
            raw_labels=self.raw_labels,
        )


def remap_labels(raw: np.ndarray) -> tuple[np.ndarray, tuple]:
    """Map raw label values onto 0..K-1 in sorted order; returns (labels, raw values by index)."""
    values, labels = np.unique(raw, return_inverse=True)
    return labels.astype(np.int64), tuple(v.item() if hasattr(v, "item") else v for v in values)


def _sniff_separator(path: Path) -> str:
    with path.open("r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                if "\t" in line:
                    return "\t"
                if "," in line:
                    return ","
                return r"\s+"
    raise DatasetError(f"{path}: file is empty")


def load_ucr(path: str | Path, name: str | None = None) -> Dataset:
    """Load a UCR text file (label column first).

    Raises:
        DatasetError: empty file, ragged rows, non-numeric or missing cells
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"{path}: no such file")
    sep = _sniff_separator(path)

    try:
        frame = pd.read_csv(
            path,
            sep=sep,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            engine="python",
        )
    except pd.errors.EmptyDataError as e:
        raise DatasetError(f"{path}: file is empty") from e
    except pd.errors.ParserError as e:
        raise DatasetError(f"{path}: ragged rows ({e})") from e

    if frame.empty:
        raise DatasetError(f"{path}: file is empty")
    if frame.shape[1] < 2:
        raise DatasetError(f"{path}: rows need a label followed by at least one value")

    # Short rows come back padded with NaN; explicit empty cells come back as "".
    short = frame.isna().any(axis=1)
    if short.any():
        row = int(np.flatnonzero(short.to_numpy())[0]) + 1
        raise DatasetError(f"{path}: ragged rows (row {row} has fewer than {frame.shape[1] - 1} values)")

    cells = frame.apply(lambda column: column.str.strip())
    if (cells == "").any(axis=None):
        raise DatasetError(f"{path}: missing values are not supported")
    numeric = cells.apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna()
    if bad.any(axis=None):
        row, col = (int(i[0]) for i in np.nonzero(bad.to_numpy()))
        raise DatasetError(f"{path}: non-numeric cell {cells.iat[row, col]!r} at row {row + 1}, column {col + 1}")

    # parse the validated text with Python float so values round-trip exactly
    values = cells.to_numpy().astype(np.float64)
    if not np.all(np.isfinite(values)):
        raise DatasetError(f"{path}: non-finite values are not supported")

    labels, raw_labels = remap_labels(values[:, 0])
    dataset = Dataset(
        samples=np.ascontiguousarray(values[:, 1:]),
        labels=labels,
        name=name or path.stem,
        num_classes=len(raw_labels),
        raw_labels=raw_labels,
    )
    logger.info(
        "Loaded %s: N=%d L=%d classes=%d", dataset.name, dataset.size, dataset.signal_length, dataset.num_classes
    )
    return dataset


def split(ds: Dataset, mode: str = "whole", test: Dataset | None = None) -> tuple[Dataset, Dataset]:
    """Return (train view, evaluation view).

    `whole` evaluates on the training set itself; `train_test_files` pairs the
    training file with a separately loaded test file.
    """
    if mode == "whole":
        return ds, ds
    if mode == "train_test_files":
        if test is None:
            raise DatasetError("train_test_files split needs a loaded test dataset")
        if test.signal_length != ds.signal_length:
            raise DatasetError(
                f"test signals have length {test.signal_length}, training signals {ds.signal_length}"
            )
        return ds, test
    raise DatasetError(f"unknown split mode {mode!r}; expected one of {', '.join(SPLIT_MODES)}")


def write_ucr(ds: Dataset, path: str | Path) -> Path:
    """Write `ds` as a tab-separated UCR file (raw labels restored when known)."""
    path = Path(path)
    labels = [ds.raw_labels[i] for i in ds.labels] if ds.raw_labels else list(ds.labels)
    frame = pd.DataFrame(ds.samples)
    frame.insert(0, "label", labels)
    frame.to_csv(path, sep="\t", header=False, index=False, float_format="%.17g")
    return path
