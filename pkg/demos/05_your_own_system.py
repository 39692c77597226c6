"""
Studying a system of your own
=============================

Configurations are plain dictionaries (or JSON files with the same
layout). Here a Q2 center is paired with a hand-picked saddle and the
full report, including the return-map check, is printed as JSON.
"""

import json

from crossing_cycles import config_from_dict, run

config = config_from_dict({
    "name": "hand-made Q2",
    "saddle": {"mu": -0.33, "A": -0.79, "delta": 0.05, "B": -0.53, "C": 0.88},
    "center": {"kind": "Q2", "affine": {"a1": 0.8, "b1": -0.3, "c1": 0.1,
                                        "alpha1": 0.2, "beta1": 0.9, "gamma1": -0.4}},
    "solver": {"x_max": 50.0},
})

report = run(config, oracle=True, oracle_range=(0.01, 3.0), oracle_samples=200)
print(json.dumps(report.to_dict(), indent=2))
print(f"\n{report.cycle_count} crossing cycle(s); bound for {report.kind} is {report.max_admissible}")
