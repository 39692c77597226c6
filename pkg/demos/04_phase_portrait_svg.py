"""
Drawing the cycles
==================

The SVG shows the two switching rays, each verified cycle as a closed
path, and optional direction glyphs of whichever field is active at each
grid node. Output is plain text and byte-stable, so it diffs cleanly.
"""

import sys
from pathlib import Path

from crossing_cycles import builtin_config, run, verified_cycles
from crossing_cycles.svgplot import render_svg, write_svg

cfg = builtin_config("q1")
report = run(cfg)
cycles = verified_cycles(cfg, report)
target = Path(sys.argv[1] if len(sys.argv) > 1 else "q1_cycles.svg")
svg = render_svg(cycles, (-0.5, 1.2, -0.5, 1.2), saddle=cfg.saddle, center=cfg.center,
                 glyphs=12, title="four crossing cycles, Q1 center")
write_svg(target, svg)
print(f"wrote {target} with {len(cycles)} cycles")
