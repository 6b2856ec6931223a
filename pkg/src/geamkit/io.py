"""JSON serialization with fixed 17-significant-digit floats."""
import json
import math
import os
import tempfile

import numpy as np

from .geam import Geam, GeamConfig
from .states import DensityMatrix


def _encode(obj):
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite number {x}")
        if x == 0.0:
            x = 0.0  # drop the sign of -0.0
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return _encode(obj) + "\n"


def write_json(path, obj):
    """Write atomically: temp file in the target directory, then rename."""
    text = dumps(obj)
    if path in (None, "-"):
        print(text, end="")
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _matrix_to_dict(m):
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _matrix_from_dict(data):
    return np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)


def geam_to_dict(geam):
    return {
        "dim": geam.dim,
        "frames": [
            {
                "gamma": f.gamma,
                "tau_sign": 1 if f.tau >= 0 else -1,
                "operators": [_matrix_to_dict(p) for p in f.operators],
            }
            for f in geam.frames
        ],
    }


def geam_from_dict(data):
    d = int(data["dim"])
    frames = [
        (float(f["gamma"]), np.array([_matrix_from_dict(p) for p in f["operators"]]))
        for f in data["frames"]
    ]
    signs = [int(f.get("tau_sign", 1)) for f in data["frames"]]
    return Geam.from_operators(d, frames, tau_signs=signs)


def load_geam(path):
    return geam_from_dict(read_json(path))


def load_state(path):
    return DensityMatrix.from_dict(read_json(path))


def load_config(path):
    return GeamConfig.from_dict(read_json(path))
