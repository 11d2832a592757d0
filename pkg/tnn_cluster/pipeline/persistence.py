"""
Versioned plain-text model file.

    tnn-cluster model v1
    [config]
    key=value ...              (same keys as the config file)
    [projection]
    signal_length=L
    reduced_length=ell
    seed=S                     (the matrix is redrawn from these three)
    [receptive_fields]
    x_min x_max                (one line per projected column, shortest round-trip floats)
    [column]
    <column snapshot>
    [state]
    epochs_run=...
    converged=true|false
    samples_seen=...

Every value is written deterministically, so identical models give identical bytes.
"""

import logging
from pathlib import Path

import numpy as np

from ..config.settings import TnnConfig, validate
from ..encoding.projection import make_projection
from ..encoding.receptive_fields import ReceptiveFieldBank
from ..errors import ConfigError, ModelFormatError, ShapeError
from ..network.snapshot import format_column, parse_column
from .trainer import TrainedModel

logger = logging.getLogger(__name__)

MODEL_HEADER = "tnn-cluster model v1"
SECTIONS = ("config", "projection", "receptive_fields", "column", "state")


def format_model(model: TrainedModel) -> str:
    cfg = model.config
    lines = [MODEL_HEADER, "[config]"]
    lines += [f"{key}={value}" for key, value in cfg.to_dict().items()]
    lines += [
        "[projection]",
        f"signal_length={model.projection.signal_length}",
        f"reduced_length={model.projection.reduced_length}",
        f"seed={model.projection.seed}",
        "[receptive_fields]",
    ]
    lines += [f"{float(lo)!r} {float(hi)!r}" for lo, hi in zip(model.bank.x_min, model.bank.x_max)]
    lines.append("[column]")
    lines.append(format_column(model.column).rstrip("\n"))
    lines += [
        "[state]",
        f"epochs_run={model.epochs_run}",
        f"converged={'true' if model.converged else 'false'}",
        f"samples_seen={model.samples_seen}",
    ]
    return "\n".join(lines) + "\n"


def save_model(model: TrainedModel, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_model(model), encoding="utf-8")
    logger.info("Saved model to %s", path)
    return path


def _split_sections(text: str) -> dict[str, list[str]]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MODEL_HEADER:
        raise ModelFormatError(f"not a model file (expected header {MODEL_HEADER!r})")
    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for line in lines[1:]:
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1]
            if name not in SECTIONS or name in sections:
                raise ModelFormatError(f"unexpected section [{name}]")
            current = sections[name] = []
        elif current is None:
            raise ModelFormatError(f"content before the first section: {stripped!r}")
        else:
            current.append(stripped)
    missing = [name for name in SECTIONS if name not in sections]
    if missing:
        raise ModelFormatError(f"missing sections: {', '.join(missing)}")
    return sections


def _key_values(lines: list[str], section: str) -> dict[str, str]:
    values = {}
    for line in lines:
        if "=" not in line:
            raise ModelFormatError(f"[{section}] expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def _int_field(values: dict[str, str], key: str, section: str) -> int:
    try:
        return int(values[key])
    except KeyError as e:
        raise ModelFormatError(f"[{section}] missing {key}") from e
    except ValueError as e:
        raise ModelFormatError(f"[{section}] {key} is not an integer: {values[key]!r}") from e


def parse_model(text: str) -> TrainedModel:
    """Rebuild a TrainedModel from model-file text.

    Raises:
        ModelFormatError: malformed or inconsistent content
    """
    sections = _split_sections(text)
    try:
        cfg = validate(TnnConfig().with_overrides(_key_values(sections["config"], "config")))
    except ConfigError as e:
        raise ModelFormatError(f"[config] {e}") from e

    proj = _key_values(sections["projection"], "projection")
    length = _int_field(proj, "signal_length", "projection")
    ell = _int_field(proj, "reduced_length", "projection")
    seed = _int_field(proj, "seed", "projection")
    if (length, ell) != (cfg.signal_length, cfg.ell):
        raise ModelFormatError(f"[projection] dimensions {length}x{ell} disagree with the config")
    try:
        projection = make_projection(length, ell, seed)
    except ShapeError as e:
        raise ModelFormatError(f"[projection] {e}") from e

    try:
        ranges = np.asarray([[float(v) for v in line.split()] for line in sections["receptive_fields"]])
    except ValueError as e:
        raise ModelFormatError(f"[receptive_fields] {e}") from e
    if ranges.shape != (ell, 2):
        raise ModelFormatError(f"[receptive_fields] expected {ell} lines of 'x_min x_max'")
    bank = ReceptiveFieldBank(
        x_min=ranges[:, 0].copy(), x_max=ranges[:, 1].copy(), gamma=cfg.gamma, encoding_neurons=cfg.encoding_neurons
    )

    column = parse_column(iter(sections["column"]))
    if (column.num_neurons, column.synapses) != (cfg.num_clusters, cfg.synapses_per_neuron):
        raise ModelFormatError("[column] shape disagrees with the config")
    if (column.theta, column.t_max, column.w_max) != (cfg.theta, cfg.t_max, cfg.w_max):
        raise ModelFormatError("[column] theta/t_max/w_max disagree with the config")

    state = _key_values(sections["state"], "state")
    converged = state.get("converged", "false")
    if converged not in ("true", "false"):
        raise ModelFormatError(f"[state] converged must be true or false, got {converged!r}")
    return TrainedModel(
        projection=projection,
        bank=bank,
        column=column,
        config=cfg,
        epochs_run=_int_field(state, "epochs_run", "state"),
        converged=converged == "true",
        samples_seen=_int_field(state, "samples_seen", "state"),
    )


def load_model(path: str | Path) -> TrainedModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFormatError(f"{path}: cannot read model file ({e.strerror})") from e
    model = parse_model(text)
    logger.info("Loaded model from %s (C=%d, synapses=%d)", path, model.column.num_neurons, model.column.synapses)
    return model

