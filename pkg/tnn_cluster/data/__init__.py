"""Dataset loading and synthetic generators."""

from .generator import SignalGenerator, synth_two_tone
from .loader import Dataset, load_ucr, split, write_ucr

__all__ = ["Dataset", "SignalGenerator", "load_ucr", "split", "synth_two_tone", "write_ucr"]
