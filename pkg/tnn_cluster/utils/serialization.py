"""
JSON and checksum helpers shared by the results writers and the run manifest.
"""

import hashlib
import json
from fractions import Fraction
from pathlib import Path

import numpy as np


class CustomJSONEncoder(json.JSONEncoder):
    """JSON encoder that handles Fraction, numpy scalar/array and Path objects"""
    def default(self, obj):
        if isinstance(obj, Fraction):
            return float(obj)
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, Path):
            return str(obj)
        return super().default(obj)


def safe_json_dumps(obj, **kwargs):
    """Deterministic JSON dumps (sorted keys) that handles Fraction and numpy objects"""
    kwargs.setdefault("sort_keys", True)
    return json.dumps(obj, cls=CustomJSONEncoder, **kwargs)


def file_checksum(path: str | Path) -> str:
    """sha256 of a file's bytes."""
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()
