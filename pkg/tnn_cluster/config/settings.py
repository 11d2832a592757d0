"""
Configuration management for the TNN clustering engine.

Hyperparameters are layered the same way everywhere: dataclass defaults, then a
plain-text key=value file, then TNN_* environment variables, then CLI flags.
`validate` turns a (possibly partial) TnnConfig into an immutable
ValidatedConfig with every derived value resolved.
"""

import logging
import os
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..errors import ConfigError

logger = logging.getLogger(__name__)

# ℓ = ⌊L / REDUCTION_FACTOR⌋ unless reduced_length is given explicitly
REDUCTION_FACTOR = 8

CONVERGENCE_METRICS = ("mode_flips", "any_change")

ENV_PREFIX = "TNN_"


@dataclass(frozen=True)
class StdpParams:
    """Bernoulli probabilities of the stochastic STDP rule.

    Defaults are dyadic so every draw is an integer comparison.
    """

    pi_s: Fraction = Fraction(1, 8)
    pi_c: Fraction = Fraction(1, 2)
    pi_b: Fraction = Fraction(3, 4)
    pi_min: Fraction = Fraction(1, 4)

    def validate(self) -> "StdpParams":
        for name in ("pi_s", "pi_c", "pi_b", "pi_min"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ConfigError(name, f"probability must lie in [0, 1], got {value}")
        if not self.pi_s < self.pi_c < self.pi_b:
            raise ConfigError(
                "pi_s < pi_c < pi_b",
                f"ordering violated (pi_s={self.pi_s}, pi_c={self.pi_c}, pi_b={self.pi_b})",
            )
        return self


@dataclass(frozen=True)
class TnnConfig:
    """Hyperparameter record shared by all modules.

    signal_length and num_clusters may stay None until a dataset is known;
    reduced_length and theta stay None to request their derived defaults.
    """

    # Problem shape
    signal_length: int | None = None
    num_clusters: int | None = None

    # Encoding
    encoding_neurons: int = 8
    reduced_length: int | None = None
    gamma: Fraction = Fraction(3, 2)
    t_max: int = 16

    # Column
    w_max: int = 7
    theta: int | None = None

    # Learning
    stdp: StdpParams = field(default_factory=StdpParams)
    rng_seed: int = 0
    max_epochs: int = 50
    convergence_frac: Fraction = Fraction(1, 100)
    convergence_metric: str = "mode_flips"
    shuffle: bool = True

    @classmethod
    def from_env(cls, base: "TnnConfig | None" = None, environ: Mapping[str, str] | None = None) -> "TnnConfig":
        """Overlay TNN_<KEY> environment variables on `base` (defaults when omitted)."""
        environ = os.environ if environ is None else environ
        overrides = {
            key: environ[ENV_PREFIX + key.upper()]
            for key in CONFIG_KEYS
            if ENV_PREFIX + key.upper() in environ
        }
        return (base or cls()).with_overrides(overrides)

    def with_overrides(self, overrides: Mapping[str, Any]) -> "TnnConfig":
        """Return a copy with the given keys replaced; string values are parsed."""
        top: dict[str, Any] = {}
        stdp: dict[str, Any] = {}
        for key, raw in overrides.items():
            if key not in CONFIG_KEYS:
                raise ConfigError(key, "unknown configuration key")
            value = _parse_value(key, raw) if isinstance(raw, str) else raw
            if key in STDP_KEYS:
                stdp[key] = value
            else:
                top[key] = value
        if stdp:
            top["stdp"] = replace(self.stdp, **stdp)
        # Overrides always yield an unvalidated record, even from a ValidatedConfig.
        plain = {f.name: getattr(self, f.name) for f in fields(TnnConfig)}
        plain.update(top)
        return TnnConfig(**plain)

    def to_dict(self) -> dict[str, str]:
        """Flat key -> text mapping, the same shape as the config file."""
        flat: dict[str, str] = {}
        for key in CONFIG_KEYS:
            value = getattr(self.stdp, key) if key in STDP_KEYS else getattr(self, key)
            if value is None:
                continue
            if isinstance(value, bool):
                flat[key] = "true" if value else "false"
            else:
                flat[key] = str(value)
        return flat


@dataclass(frozen=True)
class ValidatedConfig(TnnConfig):
    """A TnnConfig whose invariants hold and whose derived values are filled in."""

    @property
    def ell(self) -> int:
        return int(self.reduced_length)  # type: ignore[arg-type]

    @property
    def synapses_per_neuron(self) -> int:
        return self.encoding_neurons * self.ell

    @property
    def weight_bits(self) -> int:
        return (self.w_max + 1).bit_length() - 1


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw.strip())
    except ValueError as e:
        raise ConfigError(key, f"expected an integer, got {raw!r}") from e


def _parse_fraction(key: str, raw: str) -> Fraction:
    try:
        return Fraction(raw.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(key, f"expected a rational like 3/2 or 1.5, got {raw!r}") from e


def _parse_bool(key: str, raw: str) -> bool:
    text = raw.strip().lower()
    if text in ("true", "1", "yes", "on"):
        return True
    if text in ("false", "0", "no", "off"):
        return False
    raise ConfigError(key, f"expected true/false, got {raw!r}")


def _parse_str(key: str, raw: str) -> str:
    return raw.strip()


CONFIG_KEYS: dict[str, Callable[[str, str], Any]] = {
    "signal_length": _parse_int,
    "num_clusters": _parse_int,
    "encoding_neurons": _parse_int,
    "reduced_length": _parse_int,
    "gamma": _parse_fraction,
    "t_max": _parse_int,
    "w_max": _parse_int,
    "theta": _parse_int,
    "pi_s": _parse_fraction,
    "pi_c": _parse_fraction,
    "pi_b": _parse_fraction,
    "pi_min": _parse_fraction,
    "rng_seed": _parse_int,
    "max_epochs": _parse_int,
    "convergence_frac": _parse_fraction,
    "convergence_metric": _parse_str,
    "shuffle": _parse_bool,
}

STDP_KEYS = frozenset({"pi_s", "pi_c", "pi_b", "pi_min"})


def _parse_value(key: str, raw: str) -> Any:
    return CONFIG_KEYS[key](key, raw)


def parse_config_text(text: str) -> dict[str, str]:
    """Parse key=value lines; `#` starts a comment, blank lines are skipped."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("syntax", f"line {lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(key, f"line {lineno}: unknown configuration key")
        if key in values:
            raise ConfigError(key, f"line {lineno}: key given twice")
        values[key] = value
    return values


def load_config_file(path: str | Path, base: TnnConfig | None = None) -> TnnConfig:
    """Load a key=value config file on top of `base`."""
    text = Path(path).read_text(encoding="utf-8")
    return (base or TnnConfig()).with_overrides(parse_config_text(text))


def resolve_for_dataset(cfg: TnnConfig, signal_length: int, num_classes: int) -> TnnConfig:
    """Fill signal_length / num_clusters from a dataset when the config left them unset."""
    updates: dict[str, int] = {}
    if cfg.signal_length is None:
        updates["signal_length"] = signal_length
    if cfg.num_clusters is None:
        updates["num_clusters"] = num_classes
    return replace(cfg, **updates) if updates else cfg


def _require_positive(name: str, value: int | None) -> int:
    if value is None:
        raise ConfigError(name, "must be set (positive integer)")
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(name, f"must be a positive integer, got {value!r}")
    return value


def validate(cfg: TnnConfig) -> ValidatedConfig:
    """Check every invariant and return the resolved, immutable config.

    Raises:
        ConfigError: naming the first invariant that fails
    """
    length = _require_positive("signal_length", cfg.signal_length)
    clusters = _require_positive("num_clusters", cfg.num_clusters)
    neurons = _require_positive("encoding_neurons", cfg.encoding_neurons)
    t_max = _require_positive("t_max", cfg.t_max)
    w_max = _require_positive("w_max", cfg.w_max)

    if neurons < 3:
        raise ConfigError("encoding_neurons >= 3", f"sigma divides by E-2, got E={neurons}")
    if (w_max + 1) & w_max:
        raise ConfigError("w_max = 2^b - 1", f"w_max must be one less than a power of two, got {w_max}")

    if cfg.reduced_length is None:
        ell = length // REDUCTION_FACTOR
        if ell < 1:
            raise ConfigError("reduced_length >= 1", f"floor(L/{REDUCTION_FACTOR}) is 0 for L={length}")
        if neurons * ell > length:
            raise ConfigError("E*ell <= L", f"E*ell = {neurons * ell} exceeds L = {length}")
    else:
        ell = _require_positive("reduced_length", cfg.reduced_length)
        if ell > length:
            raise ConfigError("reduced_length <= signal_length", f"ell = {ell} exceeds L = {length}")

    if cfg.gamma <= 0:
        raise ConfigError("gamma > 0", f"got {cfg.gamma}")

    ceiling = neurons * ell * w_max
    if cfg.theta is None:
        theta = (ceiling + 2) // 4  # round(E*ell*w_max / 4), half away from zero
    else:
        theta = _require_positive("theta", cfg.theta)
    if theta > ceiling:
        raise ConfigError("theta <= E*ell*w_max", f"theta = {theta} can never be reached (max potential {ceiling})")

    cfg.stdp.validate()

    if not 0 <= cfg.rng_seed < 2**64:
        raise ConfigError("rng_seed", f"must be a 64-bit unsigned integer, got {cfg.rng_seed}")
    if cfg.max_epochs < 0:
        raise ConfigError("max_epochs", f"must be non-negative, got {cfg.max_epochs}")
    if not 0 < cfg.convergence_frac < 1:
        raise ConfigError("convergence_frac", f"must lie in (0, 1), got {cfg.convergence_frac}")
    if cfg.convergence_metric not in CONVERGENCE_METRICS:
        raise ConfigError(
            "convergence_metric", f"must be one of {', '.join(CONVERGENCE_METRICS)}, got {cfg.convergence_metric!r}"
        )

    values = {f.name: getattr(cfg, f.name) for f in fields(TnnConfig)}
    values.update(
        signal_length=length,
        num_clusters=clusters,
        reduced_length=ell,
        theta=theta,
        gamma=Fraction(cfg.gamma),
        convergence_frac=Fraction(cfg.convergence_frac),
    )
    return ValidatedConfig(**values)
