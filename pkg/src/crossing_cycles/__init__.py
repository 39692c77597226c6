"""
Crossing limit cycles of planar piecewise systems that pair a linear
Hamiltonian saddle on the closed first quadrant with an affinely
transformed quadratic isochronous center (Loud's Q1..Q4) elsewhere.

Typical use::

    from crossing_cycles import builtin_config, run
    report = run(builtin_config("q4"))
    print(report.cycle_count)
"""

from .closing import (BoundReport, ClosingPair, DegreeMismatch, bound_report, cleared_difference,
                      closing_pair, closing_poly_center, closing_poly_saddle)
from .config import (ParseError, SystemConfig, builtin_config, config_from_dict, load_config,
                     paper_examples)
from .fields import (AffineMap, CenterKind, CenterSystem, DenominatorSingular, Region,
                     SaddleParams, ValidationError, base_center_field, base_center_integral,
                     center_field, center_integral, classify, saddle_field, saddle_integral)
from .orbits import (ArcResult, ArcStatus, IntegratorOpts, NoConnection, Rejected, VerifiedCycle,
                     half_map_minus, half_map_plus, integrate_until_event, oracle_scan,
                     verify_cycle)
from .polycore import (BivariatePoly, CommonComponent, ConvergenceFailure, UnivariatePoly,
                       real_roots, resultant_eliminate_y)
from .report import CycleReport, StageError, run, verified_cycles
from .solver import (BoundViolation, CycleCandidate, SolverOpts, Tangency, admissible_candidates,
                     candidates, crossing_test, solve_closing)
from .svgplot import render_svg

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "ArcResult", "ArcStatus", "BivariatePoly", "BoundReport", "BoundViolation",
    "CenterKind", "CenterSystem", "ClosingPair", "CommonComponent", "ConvergenceFailure",
    "CycleCandidate", "CycleReport", "DegreeMismatch", "DenominatorSingular", "IntegratorOpts",
    "NoConnection", "ParseError", "Region", "Rejected", "SaddleParams", "SolverOpts",
    "StageError", "SystemConfig", "Tangency", "UnivariatePoly", "ValidationError",
    "VerifiedCycle", "admissible_candidates", "base_center_field", "base_center_integral",
    "bound_report", "builtin_config", "candidates", "center_field", "center_integral",
    "classify", "config_from_dict", "cleared_difference", "closing_pair", "closing_poly_center",
    "closing_poly_saddle", "crossing_test", "half_map_minus", "half_map_plus",
    "integrate_until_event", "load_config", "oracle_scan", "paper_examples", "real_roots",
    "render_svg", "resultant_eliminate_y", "run", "saddle_field", "saddle_integral",
    "solve_closing", "verified_cycles", "verify_cycle",
]
