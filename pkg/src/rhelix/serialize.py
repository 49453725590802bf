"""Canonical JSON and CSV writers (byte-stable across runs)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0"
    return "%.17g" % x


def to_plain(obj):
    """Convert numpy/dataclass values into plain JSON-compatible Python."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_plain(obj.to_dict() if hasattr(obj, "to_dict") else asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _encode(obj, indent, level, out):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            out.append(("," if i else "") + pad + json.dumps(key, ensure_ascii=False) + ": ")
            _encode(obj[key], indent, level + 1, out)
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            out.append("[" + ", ".join(str(v) if isinstance(v, int) else _float(v) for v in obj) + "]")
            return
        out.append("[")
        for i, v in enumerate(obj):
            out.append(("," if i else "") + pad)
            _encode(v, indent, level + 1, out)
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj, indent: int = 2) -> str:
    """Sorted keys, ``%.17g`` floats, non-finite values as ``null``; ends with a newline."""
    out = []
    _encode(to_plain(obj), indent, 0, out)
    return "".join(out) + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["%.17g" % float(x) for x in row])
    return buf.getvalue()


def curve_csv(ts, points, curvatures) -> str:
    """Columns ``t, x1..xn, k1..k{n-1}``."""
    n = np.asarray(points).shape[1]
    header = ["t"] + [f"x{i + 1}" for i in range(n)] + [f"k{i + 1}" for i in range(n - 1)]
    rows = (np.concatenate([[t], p, k]) for t, p, k in zip(ts, points, curvatures))
    return csv_text(header, rows)


def normals_csv(us, points, normals) -> str:
    """Columns ``u1..u{n-1}, x1..xn, N1..Nn``."""
    n = np.asarray(points).shape[1]
    header = [f"u{i + 1}" for i in range(n - 1)] + [f"x{i + 1}" for i in range(n)] + [f"N{i + 1}" for i in range(n)]
    return csv_text(header, np.hstack([us, points, normals]))


def trace_csv(trace) -> str:
    """Columns ``s, u1..u{n-1}, x1..xn, v1..vn``."""
    n = trace.positions.shape[1]
    header = (
        ["s"] + [f"u{i + 1}" for i in range(n - 1)] + [f"x{i + 1}" for i in range(n)] + [f"v{i + 1}" for i in range(n)]
    )
    return csv_text(header, np.hstack([trace.s[:, None], trace.u, trace.positions, trace.velocities]))
