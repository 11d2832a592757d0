"""Area, power and latency estimates for TNN columns."""

from .cost_model import (
    PUBLISHED_DESIGN_POINTS,
    DimensionalitySavings,
    HwCoefficients,
    HwEstimate,
    area_power_reduction,
    dimensionality_savings,
    estimate,
    estimate_for_synapses,
    fit_coefficients,
    format_hw_table,
    load_calibration,
    synapse_count,
)

__all__ = [
    "PUBLISHED_DESIGN_POINTS",
    "DimensionalitySavings",
    "HwCoefficients",
    "HwEstimate",
    "area_power_reduction",
    "dimensionality_savings",
    "estimate",
    "estimate_for_synapses",
    "fit_coefficients",
    "format_hw_table",
    "load_calibration",
    "synapse_count",
]
