"""CSV, JSON and SVG writers.

CSV files start with an optional ``# config: {...}`` comment line, then a
header, then one row per record; reals use 17 significant digits and lines
end with LF.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _config_line(config) -> str:
    return "# config: " + json.dumps(config, sort_keys=True) + "\n"


def path_csv(grid, values, config=None) -> str:
    lines = []
    if config is not None:
        lines.append(_config_line(config))
    lines.append("t,value\n")
    lines.extend(f"{_fmt(t)},{_fmt(v)}\n" for t, v in zip(grid, values))
    return "".join(lines)


def moment_csv(rows, config=None) -> str:
    lines = []
    if config is not None:
        lines.append(_config_line(config))
    lines.append("q,n,value\n")
    lines.extend(f"{q},{n},{_fmt(v)}\n" for q, n, v in rows)
    return "".join(lines)


def read_path_csv(path) -> tuple[np.ndarray, np.ndarray, dict | None]:
    config = None
    ts, vs = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("# config: "):
                config = json.loads(line[len("# config: "):])
                continue
            if line.startswith("#") or line.startswith("t,"):
                continue
            t, v = line.split(",")
            ts.append(float(t))
            vs.append(float(v))
    return np.array(ts), np.array(vs), config


def _plain(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def report_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_plain) + "\n"


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def polyline_svg(series, config=None, width=800, height=400) -> str:
    """Minimal SVG: one polyline per ``(label, grid, values)``, viewBox [0,1] x [min,max]."""
    lo = min(float(np.min(v)) for _, _, v in series)
    hi = max(float(np.max(v)) for _, _, v in series)
    if hi == lo:
        hi, lo = hi + 0.5, lo - 0.5
    span = hi - lo
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 {_fmt(-hi)} 1 {_fmt(span)}" preserveAspectRatio="none">\n',
    ]
    if config is not None:
        out.append("<!-- config: " + json.dumps(config, sort_keys=True) + " -->\n")
    for i, (label, grid, values) in enumerate(series):
        pts = " ".join(f"{float(t):.9g},{-float(v):.9g}" for t, v in zip(grid, values))
        out.append(
            f'<polyline data-label="{label}" fill="none" stroke="{_COLORS[i % len(_COLORS)]}" '
            f'stroke-width="1" vector-effect="non-scaling-stroke" points="{pts}"/>\n'
        )
    out.append("</svg>\n")
    return "".join(out)


def write_text(path, text: str) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
