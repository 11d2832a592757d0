"""
Column snapshot text format.

    <C> <synapses> <theta> <t_max> <w_max>
    <w_00> <w_01> ...            (one row of integers per neuron)

Used for golden regression files, warm restarts and inside model files.
"""

from collections.abc import Iterator

import numpy as np

from ..errors import ModelFormatError
from .base import TnnColumn


def format_column(column: TnnColumn) -> str:
    header = f"{column.num_neurons} {column.synapses} {column.theta} {column.t_max} {column.w_max}"
    rows = (" ".join(str(int(w)) for w in row) for row in column.weights)
    return "\n".join([header, *rows]) + "\n"


def parse_column(lines: Iterator[str] | str) -> TnnColumn:
    """Parse a snapshot from text or from an iterator positioned at its header."""
    if isinstance(lines, str):
        lines = iter(lines.splitlines())
    try:
        header = next(lines).split()
        num_neurons, synapses, theta, t_max, w_max = (int(v) for v in header)
        rows = [[int(v) for v in next(lines).split()] for _ in range(num_neurons)]
    except StopIteration as e:
        raise ModelFormatError("column snapshot ends early") from e
    except ValueError as e:
        raise ModelFormatError(f"column snapshot is malformed: {e}") from e

    if any(len(row) != synapses for row in rows):
        raise ModelFormatError(f"column snapshot rows must hold {synapses} weights each")
    weights = np.asarray(rows, dtype=np.int64).reshape(num_neurons, synapses)
    if weights.size and (weights.min() < 0 or weights.max() > w_max):
        raise ModelFormatError(f"column snapshot weights fall outside [0, {w_max}]")
    return TnnColumn(weights=weights, theta=theta, t_max=t_max, w_max=w_max)
