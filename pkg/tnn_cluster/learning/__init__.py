"""Stochastic STDP learning rules."""

from .stdp import StdpRng, apply_stdp, stabilizer_neg, stabilizer_pos, stdp_delta

__all__ = ["StdpRng", "apply_stdp", "stabilizer_neg", "stabilizer_pos", "stdp_delta"]
