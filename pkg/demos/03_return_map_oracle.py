"""
A solver-free cross-check through the return map
================================================

Follow the saddle flow from (x, 0) to the y-axis, then the center flow back
to the x-axis. A crossing cycle is a fixed point of that composition. The
scan below knows nothing about resultants, so agreement with the algebraic
pipeline is genuine evidence.
"""

import time

from crossing_cycles import admissible_candidates, builtin_config, oracle_scan

cfg = builtin_config("q4")
t0 = time.perf_counter()
fixed = oracle_scan(cfg.saddle, cfg.center, (0.1, 1.5), n_samples=200)
print(f"scan took {time.perf_counter() - t0:.1f} s")

algebraic = admissible_candidates(cfg.saddle, cfg.center)
print(f"{'return map':>24} | {'algebraic':>24}")
for f, c in zip(fixed, algebraic):
    print(f"({f.x:.6f}, {f.y:.6f}) | ({c.x:.6f}, {c.y:.6f})  gap {max(abs(f.x - c.x), abs(f.y - c.y)):.1e}")
