"""
Hardware cost model for a single TNN column in 7nm CMOS.

Area and power scale linearly with the synapse count n; per-signal latency
scales with log2(n). Coefficients are fitted by least squares to calibration
points, by default the three published design points below:

    synapses   area (mm^2)   latency (ns)   power (mW)
       130        0.001          3.59          0.002
       970        0.005          5.07          0.022
      6750        0.033          6.50          0.155
"""

import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd

from ..config.settings import ValidatedConfig
from ..errors import CalibrationError, ConfigError

logger = logging.getLogger(__name__)

NODE = "7nm"

CALIBRATION_COLUMNS = ["synapses", "area_mm2", "latency_ns", "power_mw"]

PUBLISHED_DESIGN_POINTS: tuple[tuple[int, float, float, float], ...] = (
    (130, 0.001, 3.59, 0.002),
    (970, 0.005, 5.07, 0.022),
    (6750, 0.033, 6.50, 0.155),
)


@dataclass(frozen=True)
class HwCoefficients:
    area_per_synapse: float   # mm^2
    power_per_synapse: float  # mW
    latency_base: float       # ns
    latency_log_coeff: float  # ns per log2(synapse)


@dataclass(frozen=True)
class HwEstimate:
    synapse_count: int
    area_mm2: float
    latency_ns: float
    power_mw: float
    node: str = NODE

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DimensionalitySavings:
    """Projected design against a hypothetical design fed the full-length signal."""

    projected_synapses: int
    full_synapses: int
    area_power_reduction: Fraction
    latency_reduction: float

    def to_dict(self) -> dict:
        record = asdict(self)
        record["area_power_reduction"] = float(self.area_power_reduction)
        return record


def synapse_count(cfg: ValidatedConfig) -> int:
    """C * E * ell."""
    return cfg.num_clusters * cfg.encoding_neurons * cfg.ell


def fit_coefficients(calibration) -> HwCoefficients:
    """Least-squares fit: area and power through the origin, latency affine in log2(n).

    `calibration` is any sequence of (synapses, area, latency, power) rows.

    Raises:
        CalibrationError: fewer than two distinct synapse counts or non-positive values
    """
    points = np.asarray(calibration, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 4:
        raise CalibrationError(f"calibration rows need 4 values (synapses area latency power), got shape {points.shape}")
    n, area, latency, power = points.T
    if len(np.unique(n)) < 2:
        raise CalibrationError("calibration needs at least two distinct synapse counts")
    if np.any(points <= 0):
        raise CalibrationError("calibration values must all be positive")

    design = n[:, None]
    area_per_synapse = float(np.linalg.lstsq(design, area, rcond=None)[0][0])
    power_per_synapse = float(np.linalg.lstsq(design, power, rcond=None)[0][0])
    log_design = np.column_stack([np.ones_like(n), np.log2(n)])
    latency_base, latency_log_coeff = (float(v) for v in np.linalg.lstsq(log_design, latency, rcond=None)[0])

    coeffs = HwCoefficients(area_per_synapse, power_per_synapse, latency_base, latency_log_coeff)
    logger.debug("Fitted hardware coefficients: %s", coeffs)
    return coeffs


def estimate_for_synapses(synapses: int, coeffs: HwCoefficients) -> HwEstimate:
    if synapses < 1:
        raise ConfigError("synapses >= 1", f"synapse count must be positive, got {synapses}")
    result = HwEstimate(
        synapse_count=synapses,
        area_mm2=coeffs.area_per_synapse * synapses,
        latency_ns=coeffs.latency_base + coeffs.latency_log_coeff * math.log2(synapses),
        power_mw=coeffs.power_per_synapse * synapses,
    )
    if min(result.area_mm2, result.latency_ns, result.power_mw) <= 0:
        raise CalibrationError(f"coefficients give a non-positive estimate for n={synapses}: {result}")
    return result


def estimate(cfg: ValidatedConfig, coeffs: HwCoefficients) -> HwEstimate:
    return estimate_for_synapses(synapse_count(cfg), coeffs)


def area_power_reduction(encoding_neurons: int, reduced_length: int, signal_length: int) -> Fraction:
    """1 - E*ell/L: the synapse (hence area and power) saving of projecting first."""
    return 1 - Fraction(encoding_neurons * reduced_length, signal_length)


def dimensionality_savings(cfg: ValidatedConfig, coeffs: HwCoefficients) -> DimensionalitySavings:
    projected = estimate(cfg, coeffs)
    full = estimate_for_synapses(cfg.num_clusters * cfg.signal_length, coeffs)
    return DimensionalitySavings(
        projected_synapses=projected.synapse_count,
        full_synapses=full.synapse_count,
        area_power_reduction=area_power_reduction(cfg.encoding_neurons, cfg.ell, cfg.signal_length),
        latency_reduction=1 - projected.latency_ns / full.latency_ns,
    )


def load_calibration(path: str | Path) -> list[tuple[int, float, float, float]]:
    """Read whitespace-separated `synapses area latency power` rows; `#` starts a comment."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, sep=r"\s+", comment="#", header=None, names=CALIBRATION_COLUMNS, engine="python")
    except (OSError, pd.errors.EmptyDataError) as e:
        raise CalibrationError(f"{path}: cannot read calibration points ({e})") from e
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    if frame.empty or numeric.isna().any(axis=None):
        raise CalibrationError(f"{path}: every row needs four numeric values")
    return [(int(n), float(a), float(t), float(p)) for n, a, t, p in numeric.itertuples(index=False)]


def format_hw_table(estimates: list[HwEstimate]) -> str:
    frame = pd.DataFrame([e.to_dict() for e in estimates])
    return frame.to_string(
        index=False,
        formatters={
            "area_mm2": "{:.4f}".format,
            "latency_ns": "{:.2f}".format,
            "power_mw": "{:.4f}".format,
        },
    )
