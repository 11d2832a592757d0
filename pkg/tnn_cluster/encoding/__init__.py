"""Signal encoding layer: sparse random projection and receptive-field latency coding."""

from .projection import ProjectionMatrix, make_projection, project
from .receptive_fields import DEGENERATE_NEURON, ReceptiveFieldBank, encode, fit_receptive_fields, update_running_range
from .spikes import format_spike_dump, parse_spike_dump

__all__ = [
    "DEGENERATE_NEURON",
    "ProjectionMatrix",
    "ReceptiveFieldBank",
    "encode",
    "fit_receptive_fields",
    "format_spike_dump",
    "make_projection",
    "parse_spike_dump",
    "project",
    "update_running_range",
]
