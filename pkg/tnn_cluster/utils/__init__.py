"""Shared helpers: seeded random streams, JSON serialization and run manifests."""

from .manifest import RunManifest, is_manifest, manifest_path
from .rng import Stream, generator_for
from .serialization import CustomJSONEncoder, file_checksum, safe_json_dumps

__all__ = [
    "CustomJSONEncoder",
    "RunManifest",
    "Stream",
    "file_checksum",
    "generator_for",
    "is_manifest",
    "manifest_path",
    "safe_json_dumps",
]
