"""TNN processing layer: a single column of ramp-no-leak neurons with 1-WTA."""

from .base import ForwardResult, TnnColumn
from .column import assign_cluster, forward, potential_trace, response
from .snapshot import format_column, parse_column

__all__ = [
    "ForwardResult",
    "TnnColumn",
    "assign_cluster",
    "format_column",
    "forward",
    "parse_column",
    "potential_trace",
    "response",
]
