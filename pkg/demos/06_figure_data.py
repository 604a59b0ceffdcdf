"""
Figure data
===========

Writes the cartoon and the five families of cascade paths as SVG polylines
plus one CSV per depth.  Same as ``cascade-lab figures``.
"""

import sys
from pathlib import Path

from cascade_lab import io
from cascade_lab.figures import PRESETS, figure_series

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(parents=True, exist_ok=True)

for name in PRESETS:
    series = figure_series(name, seed=7)
    io.write_text(out / f"{name}.svg", io.polyline_svg(series, {"preset": name, "seed": 7}))
    spans = ", ".join(f"{label}: [{v.min():.2f}, {v.max():.2f}]" for label, _, v in series)
    print(f"{name} {PRESETS[name] or 'cartoon'} -> {spans}")
print(f"wrote {len(PRESETS)} SVG files to {out}/")
