"""Run manifest written beside every command's outputs."""

import logging
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .serialization import file_checksum, safe_json_dumps

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
MANIFEST_SUFFIX = ".manifest.json"


def manifest_path(command: str, output: str | Path | None = None) -> Path:
    """Where a run's manifest goes.

    A directory of outputs holds `manifest.json`; a single output file gets a
    `<file>.manifest.json` sidecar; a run that only prints writes
    `<command>.manifest.json` in the working directory.
    """
    if output is None or str(output) == "-":
        return Path(f"{command}{MANIFEST_SUFFIX}")
    output = Path(output)
    if output.is_dir():
        return output / MANIFEST_NAME
    return output.with_name(output.name + MANIFEST_SUFFIX)


def is_manifest(path: str | Path) -> bool:
    name = Path(path).name
    return name == MANIFEST_NAME or name.endswith(MANIFEST_SUFFIX)


@dataclass
class RunManifest:
    """What was run, with which inputs, and the checksums of what it produced."""

    command: str
    seed: int
    config: dict[str, Any] = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    checksums: dict[str, str] = field(default_factory=dict)
    started_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    wall_clock_s: float = 0.0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add_input(self, role: str, path: str | Path) -> None:
        self.inputs[role] = str(path)

    def add_output(self, role: str, path: str | Path) -> None:
        self.outputs[role] = str(path)

    def finish(self) -> "RunManifest":
        """Stamp the elapsed time and checksum every output that exists."""
        self.wall_clock_s = round(time.perf_counter() - self._t0, 3)
        self.checksums = {
            role: file_checksum(path) for role, path in sorted(self.outputs.items()) if Path(path).is_file()
        }
        return self

    def to_dict(self) -> dict:
        record = asdict(self)
        record.pop("_t0")
        return record

    def write(self, target: str | Path) -> Path:
        """Write to `target`, or to `target/manifest.json` when it is a directory."""
        path = Path(target)
        if path.is_dir():
            path = path / MANIFEST_NAME
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(safe_json_dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")
        logger.info("Wrote run manifest %s", path)
        return path
