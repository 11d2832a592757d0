"""
Command-line interface for tnn-cluster.

This module provides CLI commands for training, evaluating and streaming
TNN clustering models, dumping spike encodings and estimating hardware cost.
"""

import functools
import logging
import sys
from collections.abc import Callable
from pathlib import Path

import click
import numpy as np

from .config.settings import TnnConfig, ValidatedConfig, load_config_file, resolve_for_dataset, validate
from .data.generator import SignalGenerator
from .data.loader import Dataset, load_ucr, split
from .encoding.projection import project
from .encoding.spikes import format_spike_dump, parse_spike_dump
from .errors import INPUT_ERRORS, ConfigError, DatasetError, EvaluationError, ShapeError
from .evaluation.baseline import DEFAULT_RESTARTS, kmeans_baseline
from .evaluation.metrics import ClusteringPair, normalized_ri, rand_index
from .evaluation.report import DatasetResult, format_results_table, write_results
from .hardware.cost_model import (
    PUBLISHED_DESIGN_POINTS,
    dimensionality_savings,
    estimate,
    estimate_for_synapses,
    fit_coefficients,
    format_hw_table,
    load_calibration,
)
from .pipeline.persistence import load_model, save_model
from .pipeline.stream import DriftMonitor, stream_step
from .pipeline.trainer import TrainedModel, init_model, predict, train
from .utils.manifest import RunManifest, is_manifest, manifest_path
from .utils.serialization import safe_json_dumps

logger = logging.getLogger(__name__)

MODEL_FILE = "model.txt"
METRICS_FILE = "metrics.jsonl"
RESULTS_FILE = "results.json"
ASSIGNMENTS_FILE = "assignments.txt"


def handle_errors(func: Callable) -> Callable:
    """
    Decorator mapping exceptions to exit codes.

    Input problems (bad config, unreadable dataset, shape mismatch, bad model
    or calibration file) exit with 2; anything else exits with 1. click's own
    usage errors pass through untouched.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except INPUT_ERRORS as e:
            click.echo(f"❌ {e}", err=True)
            sys.exit(2)
        except Exception as e:
            logger.debug("Unhandled error in %s", func.__name__, exc_info=True)
            click.echo(f"❌ Internal error: {e}", err=True)
            sys.exit(1)
    return wrapper


def _parse_overrides(pairs: tuple[str, ...]) -> dict[str, str]:
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError("--set", f"expected KEY=VALUE, got {pair!r}")
        key, value = pair.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides


def build_config(
    config_path: Path | None,
    overrides: tuple[str, ...] = (),
    seed: int | None = None,
    dataset: Dataset | None = None,
) -> TnnConfig:
    """Layer defaults < config file < TNN_* environment < --set < --seed, then fill shape from the dataset."""
    cfg = load_config_file(config_path) if config_path else TnnConfig()
    cfg = TnnConfig.from_env(cfg)
    values = _parse_overrides(overrides)
    if seed is not None:
        values["rng_seed"] = str(seed)
    cfg = cfg.with_overrides(values)
    if dataset is not None:
        cfg = resolve_for_dataset(cfg, dataset.signal_length, dataset.num_classes)
    return cfg


def run_experiment(
    train_ds: Dataset,
    eval_ds: Dataset,
    cfg: ValidatedConfig,
    restarts: int = DEFAULT_RESTARTS,
    baseline_on_projected: bool = False,
) -> tuple[TrainedModel, list, DatasetResult]:
    """Train the TNN, cluster the evaluation view and score both it and K-means."""
    model, history = train(train_ds, cfg)
    clusters, confidence = predict(model, eval_ds)
    tnn_ri = rand_index(ClusteringPair(eval_ds.labels, clusters))

    baseline_input = project(eval_ds.samples, model.projection) if baseline_on_projected else eval_ds
    km_clusters = kmeans_baseline(baseline_input, cfg.num_clusters, seed=cfg.rng_seed, restarts=restarts)
    kmeans_ri = rand_index(ClusteringPair(eval_ds.labels, km_clusters))

    result = DatasetResult(
        name=train_ds.name,
        tnn_ri=float(tnn_ri),
        kmeans_ri=float(kmeans_ri),
        normalized_ri=float(normalized_ri(tnn_ri, kmeans_ri)),
        epochs=model.epochs_run,
        seed=cfg.rng_seed,
        converged=model.converged,
        mean_confidence_time=float(confidence.mean()),
        spike_rate=float((confidence < cfg.t_max).mean()),
        num_samples=eval_ds.size,
    )
    return model, history, result


def format_assignments(clusters: np.ndarray, confidence: np.ndarray) -> str:
    return "".join(f"{int(c)} {int(t)}\n" for c, t in zip(clusters, confidence))


def _parse_signal_line(line: str, length: int, labeled: bool) -> tuple[int | None, np.ndarray]:
    values = [float(v) for v in line.replace(",", " ").split()]
    label = None
    if labeled:
        if not values:
            raise ValueError("missing label")
        label, values = int(values[0]), values[1:]
    if len(values) != length:
        raise ValueError(f"expected {length} values, got {len(values)}")
    return label, np.asarray(values)


config_option = click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="key=value hyperparameter file",
)
seed_option = click.option("--seed", type=int, default=None, help="Run seed (default: rng_seed from config, 0)")
set_option = click.option(
    "--set", "overrides", multiple=True, metavar="KEY=VALUE", help="Override one config key (repeatable)"
)
manifest_option = click.option(
    "--manifest", "manifest_file", type=click.Path(dir_okay=False, path_type=Path),
    help="Run manifest path (default: beside the output file, or ./<command>.manifest.json when printing)",
)


@click.group()
@click.option("-v", "--verbose", count=True, help="Log INFO (-v) or DEBUG (-vv) to stderr")
@click.pass_context
def cli(ctx, verbose):
    """tnn-cluster - unsupervised time-series clustering with a temporal neural network.

    For configuration keys and environment variables, run:
      tnn-cluster help

    Quick start:
      tnn-cluster generate two_tone_TRAIN.tsv
      tnn-cluster train two_tone_TRAIN.tsv --out run
    """
    if verbose:
        level = logging.DEBUG if verbose > 1 else logging.INFO
        logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True)


@cli.command(name="train")
@click.argument("train_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--test", "test_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Separate test file; RI is measured on it instead of the training file")
@config_option
@seed_option
@set_option
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("run"),
              show_default=True, help="Output directory")
@click.option("--znorm", is_flag=True, help="z-normalize every series before training")
@click.option("--kmeans-restarts", default=DEFAULT_RESTARTS, show_default=True, help="K-means restarts")
@click.option("--baseline-on-projected", is_flag=True, help="Run K-means on projected signals (ablation)")
@handle_errors
def train_cmd(train_path, test_path, config_path, seed, overrides, out_dir, znorm, kmeans_restarts,
              baseline_on_projected):
    """Train a model and score it against K-means."""
    click.echo("🧠 === tnn-cluster training === 🧠")
    train_ds = load_ucr(train_path)
    test_ds = load_ucr(test_path) if test_path else None
    if znorm:
        train_ds = train_ds.z_normalized()
        test_ds = test_ds.z_normalized() if test_ds else None
    train_view, eval_view = split(train_ds, "train_test_files" if test_ds else "whole", test_ds)

    cfg = validate(build_config(config_path, overrides, seed, train_view))
    click.echo(f"📂 Dataset: {train_ds.name} (N={train_ds.size}, L={train_ds.signal_length}, C={cfg.num_clusters})")
    click.echo(f"🔧 E={cfg.encoding_neurons} ell={cfg.ell} theta={cfg.theta} seed={cfg.rng_seed}")

    manifest = RunManifest(command="train", seed=cfg.rng_seed, config=cfg.to_dict())
    manifest.add_input("train", train_path)
    if test_path:
        manifest.add_input("test", test_path)

    model, history, result = run_experiment(train_view, eval_view, cfg, kmeans_restarts, baseline_on_projected)
    status = "✅ Converged" if model.converged else "⚠️  Not converged"
    click.echo(f"{status} after {model.epochs_run} epochs")

    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = {
        "model": save_model(model, out_dir / MODEL_FILE),
        "metrics": out_dir / METRICS_FILE,
        "results": out_dir / RESULTS_FILE,
        "assignments": out_dir / ASSIGNMENTS_FILE,
    }
    outputs["metrics"].write_text("".join(safe_json_dumps(s.to_dict()) + "\n" for s in history), encoding="utf-8")
    outputs["results"].write_text(safe_json_dumps(result.to_dict(), indent=2) + "\n", encoding="utf-8")
    clusters, confidence = predict(model, train_view)
    outputs["assignments"].write_text(format_assignments(clusters, confidence), encoding="utf-8")
    for role, path in outputs.items():
        manifest.add_output(role, path)
    manifest.finish().write(manifest_path("train", out_dir))

    click.echo(f"📊 TNN RI={result.tnn_ri:.4f}  K-means RI={result.kmeans_ri:.4f}  "
               f"normalized={result.normalized_ri:.4f}")
    click.echo(f"💾 Outputs written to {out_dir}")


def find_ucr_pairs(data_dir: Path) -> list[tuple[str, Path, Path]]:
    """(name, train file, test file) for every <name>_TRAIN.* with a matching <name>_TEST.*."""
    pairs = []
    for train_file in sorted(data_dir.rglob("*_TRAIN*")):
        if not train_file.is_file() or is_manifest(train_file):
            continue
        name, _, rest = train_file.name.rpartition("_TRAIN")
        test_file = train_file.with_name(f"{name}_TEST{rest}")
        if test_file.is_file():
            pairs.append((name, train_file, test_file))
        else:
            logger.warning("Skipping %s: no matching test file %s", train_file, test_file.name)
    return pairs


@cli.command()
@click.argument("data_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@config_option
@seed_option
@set_option
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("eval"),
              show_default=True, help="Output directory")
@click.option("--znorm", is_flag=True, help="z-normalize every series before training")
@click.option("--kmeans-restarts", default=DEFAULT_RESTARTS, show_default=True, help="K-means restarts")
@click.option("--baseline-on-projected", is_flag=True, help="Run K-means on projected signals (ablation)")
@handle_errors
def evaluate(data_dir, config_path, seed, overrides, out_dir, znorm, kmeans_restarts, baseline_on_projected):
    """Train and score every UCR-style <name>_TRAIN/<name>_TEST pair in a directory."""
    pairs = find_ucr_pairs(data_dir)
    if not pairs:
        raise DatasetError(f"{data_dir}: no <name>_TRAIN.* / <name>_TEST.* pairs found")
    click.echo(f"🔍 Found {len(pairs)} dataset(s) in {data_dir}")

    manifest = RunManifest(command="evaluate", seed=seed if seed is not None else 0)
    results = []
    for name, train_file, test_file in pairs:
        try:
            train_ds, test_ds = load_ucr(train_file, name=name), load_ucr(test_file, name=name)
            if znorm:
                train_ds, test_ds = train_ds.z_normalized(), test_ds.z_normalized()
            train_view, eval_view = split(train_ds, "train_test_files", test_ds)
            cfg = validate(build_config(config_path, overrides, seed, train_view))
            _, _, result = run_experiment(train_view, eval_view, cfg, kmeans_restarts, baseline_on_projected)
        except (*INPUT_ERRORS, EvaluationError) as e:
            click.echo(f"  ⚠️  {name}: skipped ({e})")
            continue
        manifest.add_input(f"{name}/train", train_file)
        manifest.add_input(f"{name}/test", test_file)
        manifest.config[name] = cfg.to_dict()
        results.append(result)
        click.echo(f"  ✅ {name}: TNN RI={result.tnn_ri:.4f} normalized={result.normalized_ri:.4f}")

    if not results:
        raise DatasetError("no dataset could be evaluated")
    out_dir.mkdir(parents=True, exist_ok=True)
    results_path = write_results(results, out_dir / "results.jsonl")
    manifest.add_output("results", results_path)
    manifest.finish().write(manifest_path("evaluate", out_dir))
    click.echo()
    click.echo(format_results_table(results))


def _file_output(path: Path) -> Path | None:
    """The output file, or None for '-' (standard output)."""
    if str(path) == "-":
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


@cli.command()
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--input", "source", type=click.File("r"), default="-", help="Signal file (default: stdin)")
@click.option("--output", "output_path", type=click.Path(dir_okay=False, path_type=Path, allow_dash=True),
              default="-", help="Where to write 'cluster time' lines (default: stdout)")
@click.option("--learn", is_flag=True, help="Keep learning and rewrite the model file at the end")
@click.option("--labeled", is_flag=True, help="First value on each line is a class label")
@click.option("--window", default=50, show_default=True, help="Trailing window for the labelled Rand Index")
@manifest_option
@handle_errors
def stream(model_path, source, output_path, learn, labeled, window, manifest_file):
    """Cluster signals line by line, one 'cluster confidence_time' line per signal."""
    model = load_model(model_path)
    length = model.config.signal_length
    monitor = DriftMonitor(window) if labeled else None
    output_file = _file_output(output_path)

    manifest = RunManifest(command="stream", seed=model.config.rng_seed, config=model.config.to_dict())
    manifest.add_input("model", model_path)
    manifest.add_input("signals", getattr(source, "name", "-"))

    processed = 0
    with click.open_file(str(output_path), "w") as sink:
        try:
            for lineno, line in enumerate(source, 1):
                if not line.strip():
                    continue
                try:
                    label, signal = _parse_signal_line(line, length, labeled)
                    cluster, confidence, model = stream_step(model, signal, learn)
                except (ValueError, *INPUT_ERRORS) as e:
                    click.echo(f"line {lineno}: {e}", err=True)
                    continue
                sink.write(f"{cluster} {confidence}\n")
                processed += 1
                if monitor is not None:
                    ri = monitor.record(label, cluster)
                    if monitor.full and processed % window == 0:
                        logger.info("windowed RI after %d signals: %.4f", processed, ri)
        except KeyboardInterrupt:
            logger.info("Interrupted after %d signals", processed)

    if monitor is not None and len(monitor) >= 2:
        click.echo(f"windowed RI (last {len(monitor)}): {monitor.rand_index():.4f}", err=True)
    if learn:
        save_model(model, model_path)
        manifest.add_output("model", model_path)
    if output_file is not None:
        manifest.add_output("assignments", output_file)
    primary = output_file or (model_path if learn else None)
    manifest.finish().write(manifest_file or manifest_path("stream", primary))


def check_golden_dump(spikes: np.ndarray, golden_path: Path, t_max: int) -> list[int]:
    """1-based line numbers of the samples whose encoding differs from a saved dump."""
    expected = parse_spike_dump(golden_path.read_text(encoding="utf-8"), t_max)
    if expected.shape != spikes.shape:
        raise ShapeError(f"{golden_path}: dump has shape {expected.shape}, the encoding has {spikes.shape}")
    return [int(i) + 1 for i in np.flatnonzero((expected != spikes).any(axis=1))]


@cli.command()
@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@config_option
@seed_option
@set_option
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path, allow_dash=True), default="-",
              help="Dump file (default: stdout)")
@click.option("--golden", "golden_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Compare with a saved dump; exit 1 if any sample differs")
@manifest_option
@handle_errors
def encode(dataset_path, config_path, seed, overrides, out_path, golden_path, manifest_file):
    """Print the spike encoding of every sample, one line of E*ell times each."""
    ds = load_ucr(dataset_path)
    cfg = validate(build_config(config_path, overrides, seed, ds))
    spikes = init_model(ds, cfg).encode(ds.samples)
    out_file = _file_output(out_path)
    with click.open_file(str(out_path), "w") as sink:
        sink.write(format_spike_dump(spikes))

    manifest = RunManifest(command="encode", seed=cfg.rng_seed, config=cfg.to_dict())
    manifest.add_input("dataset", dataset_path)
    if golden_path:
        manifest.add_input("golden", golden_path)
    if out_file is not None:
        manifest.add_output("spikes", out_file)
    manifest.finish().write(manifest_file or manifest_path("encode", out_file))

    if golden_path:
        differing = check_golden_dump(spikes, golden_path, cfg.t_max)
        if differing:
            click.echo(f"❌ {golden_path}: {len(differing)} sample(s) differ, first at line {differing[0]}", err=True)
            sys.exit(1)
        click.echo(f"✅ {golden_path}: all {len(spikes)} samples match", err=True)


@cli.command()
@click.option("--synapses", type=int, multiple=True, help="Synapse count to estimate (repeatable)")
@config_option
@set_option
@click.option("--dataset", "dataset_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Take L and C from this dataset")
@click.option("--calibration", "calibration_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Calibration rows 'synapses area latency power' (default: built-in design points)")
@manifest_option
@handle_errors
def hwcost(synapses, config_path, overrides, dataset_path, calibration_path, manifest_file):
    """Estimate 7nm area, latency and power from the synapse count."""
    calibration = load_calibration(calibration_path) if calibration_path else PUBLISHED_DESIGN_POINTS
    coeffs = fit_coefficients(calibration)

    estimates = [estimate_for_synapses(n, coeffs) for n in synapses]
    cfg = savings = None
    if config_path or overrides or dataset_path:
        dataset = load_ucr(dataset_path) if dataset_path else None
        cfg = validate(build_config(config_path, overrides, None, dataset))
        estimates.append(estimate(cfg, coeffs))
        savings = dimensionality_savings(cfg, coeffs)
    if not estimates:
        estimates = [estimate_for_synapses(row[0], coeffs) for row in calibration]

    click.echo("⚙️  TNN hardware estimate (7nm)")
    click.echo(format_hw_table(estimates))
    if savings is not None:
        click.echo(f"📉 Projection saves {float(savings.area_power_reduction):.1%} area/power and "
                   f"{savings.latency_reduction:.1%} latency ({savings.projected_synapses} vs "
                   f"{savings.full_synapses} synapses)")
    for item in estimates:
        click.echo(safe_json_dumps(item.to_dict()))
    if savings is not None:
        click.echo(safe_json_dumps(savings.to_dict()))

    manifest = RunManifest(command="hwcost", seed=cfg.rng_seed if cfg else 0, config=cfg.to_dict() if cfg else {})
    if synapses:
        manifest.config["synapses"] = list(synapses)
    if dataset_path:
        manifest.add_input("dataset", dataset_path)
    if calibration_path:
        manifest.add_input("calibration", calibration_path)
    manifest.finish().write(manifest_file or manifest_path("hwcost"))


@cli.command()
@click.argument("out_path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--n-per-class", default=50, show_default=True, help="Samples per class")
@click.option("--length", "signal_length", default=64, show_default=True, help="Signal length L")
@click.option("--seed", default=0, show_default=True, help="Generator seed")
@click.option("--low-cycles", default=2, show_default=True, help="Cycles of the class-0 tone")
@click.option("--high-cycles", default=6, show_default=True, help="Cycles of the class-1 tone")
@manifest_option
@handle_errors
def generate(out_path, n_per_class, signal_length, seed, low_cycles, high_cycles, manifest_file):
    """Write the seeded two-tone fixture as a UCR TSV file."""
    generator = SignalGenerator(signal_length, seed=seed, low_cycles=low_cycles, high_cycles=high_cycles)
    generator.generate_and_save(n_per_class, _file_output(out_path))
    click.echo(f"✅ Wrote {2 * n_per_class} samples (L={signal_length}) to {out_path}")

    manifest = RunManifest(
        command="generate",
        seed=seed,
        config={
            "n_per_class": n_per_class,
            "signal_length": signal_length,
            "low_cycles": low_cycles,
            "high_cycles": high_cycles,
        },
    )
    manifest.add_output("dataset", out_path)
    manifest.finish().write(manifest_file or manifest_path("generate", out_path))


@cli.command(name="help")
def help_cmd():
    """Show detailed help including configuration keys and environment variables."""
    click.echo("""
tnn-cluster - Temporal Neural Network time-series clustering
=============================================================

CONFIGURATION:
-------------
Values are layered: built-in defaults < --config FILE < TNN_* environment
variables < --set KEY=VALUE < --seed. Config files hold one key=value per
line; '#' starts a comment. Rationals accept 3/2 or 1.5.

  signal_length      L; taken from the training file when unset
  num_clusters       C; taken from the number of classes when unset
  encoding_neurons   E, receptive fields per projected feature (default: 8, >= 3)
  reduced_length     ell (default: floor(L/8))
  gamma              receptive-field width factor (default: 3/2)
  t_max              spike-time resolution; t_max means "no spike" (default: 16)
  w_max              maximum weight, 2^b - 1 (default: 7)
  theta              firing threshold (default: round(E*ell*w_max/4))
  pi_s pi_c pi_b pi_min   STDP probabilities (default: 1/8 1/2 3/4 1/4)
  rng_seed           run seed (default: 0)
  max_epochs         epoch cap (default: 50, 0 = no training)
  convergence_frac   stop threshold (default: 1/100)
  convergence_metric mode_flips | any_change (default: mode_flips)
  shuffle            shuffle samples every epoch (default: true)

Environment variables use the TNN_ prefix and upper case:
  export TNN_MAX_EPOCHS=20
  export TNN_RNG_SEED=3

QUICK START:
-----------
1. Generate a fixture (or use UCR archive files):
   tnn-cluster generate two_tone_TRAIN.tsv --seed 0
   tnn-cluster generate two_tone_TEST.tsv --seed 1

2. Train and score against K-means:
   tnn-cluster train two_tone_TRAIN.tsv --test two_tone_TEST.tsv --out run

3. Stream new signals through the model:
   tnn-cluster stream run/model.txt --input signals.txt
   tnn-cluster stream run/model.txt --input two_tone_TEST.tsv --labeled --learn

COMMANDS:
---------
  train       Train a model; writes model.txt, metrics.jsonl, results.json,
              assignments.txt and manifest.json
  evaluate    Train and score every <name>_TRAIN/<name>_TEST pair in a directory
  stream      Cluster signals line by line (optionally learning)
  encode      Dump the spike encoding of a dataset (--golden FILE checks a saved dump)
  hwcost      Estimate 7nm area / latency / power
  generate    Write the two-tone synthetic fixture
  help        Show this help message

RUN MANIFESTS:
-------------
Every command except help writes one JSON manifest (command, seed, config,
inputs, outputs, checksums, wall clock): manifest.json inside an output
directory, <file>.manifest.json beside a single output file, and
./<command>.manifest.json when the result only goes to stdout. --manifest PATH
overrides the location.

EXIT CODES:
----------
  0  success
  1  internal error, or an encoding that differs from --golden
  2  usage or input error (missing file, bad config, malformed dataset)
""")


def main():
    """Main CLI entry point."""
    cli()


if __name__ == '__main__':
    main()
