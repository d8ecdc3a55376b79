"""Render every published figure to SVG.

Output lands in ./figures-out/ (or a directory given as the first
argument).  Files are byte-deterministic: re-rendering reproduces them
exactly.
"""

import pathlib
import sys

from pam import FIGURE_IDS, render_figure, standard_map

out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures-out")
out_dir.mkdir(parents=True, exist_ok=True)

t = standard_map()
for fid in FIGURE_IDS:
    path = out_dir / f"{fid}.svg"
    path.write_text(render_figure(t, fid))
    print(f"wrote {path} ({path.stat().st_size} bytes)")
