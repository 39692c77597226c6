"""
End-to-end pipeline and its JSON report.

``run`` chains bound, closing polynomials, algebraic solving, the
admissibility filter, orbit verification and an optional oracle scan.
The resulting :class:`CycleReport` converts to and from plain JSON data
without loss.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .closing import closing_pair
from .config import SystemConfig
from .orbits import FixedPoint, Rejected, VerifiedCycle, oracle_scan, verify_cycle
from .solver import BoundViolation, CycleCandidate, candidates

__all__ = [
    "StageError",
    "CycleSummary",
    "OracleSummary",
    "ExpectedComparison",
    "CycleReport",
    "run",
    "verified_cycles",
    "compare_expected",
    "EXPECTED_TOL",
]

log = logging.getLogger("crossing_cycles")

EXPECTED_TOL = 1e-4
ORACLE_MATCH_TOL = 1e-4


class StageError(RuntimeError):
    """A pipeline stage failed; ``cause`` is the original exception."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class CycleSummary:
    x: float
    y: float
    period_estimate: float
    direction: int
    drift_plus: float
    drift_minus: float

    @classmethod
    def of(cls, vc: VerifiedCycle) -> "CycleSummary":
        return cls(vc.candidate.x, vc.candidate.y, vc.period_estimate, vc.direction,
                   vc.plus_arc.integral_drift, vc.minus_arc.integral_drift)


@dataclass(frozen=True)
class OracleSummary:
    x_range: tuple[float, float]
    n_samples: int
    fixed_points: tuple[tuple[float, float], ...]
    agrees: bool


@dataclass(frozen=True)
class ExpectedComparison:
    table: tuple[tuple[float, float], ...]
    max_abs_error: float | None
    matched: bool


@dataclass(frozen=True)
class CycleReport:
    kind: str
    d_i: int
    bezout: int
    max_admissible: int
    solutions: tuple[CycleCandidate, ...]
    cycle_count: int
    timings: dict = field(default_factory=dict)
    name: str = ""
    cycles: tuple[CycleSummary, ...] = ()
    oracle: OracleSummary | None = None
    expected: ExpectedComparison | None = None

    def __post_init__(self):
        n = sum(1 for s in self.solutions if s.verified)
        if n != self.cycle_count:
            raise ValueError("cycle_count must equal the number of verified solutions")
        if self.cycle_count > self.max_admissible:
            raise BoundViolation(
                f"cycle_count {self.cycle_count} exceeds the bound {self.max_admissible}")

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "d_i": self.d_i,
            "bezout": self.bezout,
            "max_admissible": self.max_admissible,
            "cycle_count": self.cycle_count,
            "solutions": [s.to_dict() for s in self.solutions],
            "cycles": [vars(c).copy() for c in self.cycles],
            "oracle": None,
            "expected": None,
            "timings": dict(self.timings),
        }
        if self.oracle is not None:
            o = self.oracle
            out["oracle"] = {"x_range": list(o.x_range), "n_samples": o.n_samples,
                             "fixed_points": [list(p) for p in o.fixed_points],
                             "agrees": o.agrees}
        if self.expected is not None:
            e = self.expected
            out["expected"] = {"table": [list(p) for p in e.table],
                               "max_abs_error": e.max_abs_error, "matched": e.matched}
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "CycleReport":
        oracle = None
        if d.get("oracle") is not None:
            o = d["oracle"]
            oracle = OracleSummary(tuple(o["x_range"]), o["n_samples"],
                                   tuple(tuple(p) for p in o["fixed_points"]), o["agrees"])
        expected = None
        if d.get("expected") is not None:
            e = d["expected"]
            expected = ExpectedComparison(tuple(tuple(p) for p in e["table"]),
                                          e["max_abs_error"], e["matched"])
        return cls(
            kind=d["kind"], d_i=d["d_i"], bezout=d["bezout"], max_admissible=d["max_admissible"],
            solutions=tuple(CycleCandidate.from_dict(s) for s in d["solutions"]),
            cycle_count=d["cycle_count"], timings=dict(d.get("timings", {})),
            name=d.get("name", ""), cycles=tuple(CycleSummary(**c) for c in d.get("cycles", [])),
            oracle=oracle, expected=expected,
        )


def compare_expected(table, solutions) -> ExpectedComparison:
    """Match each expected pair with the nearest verified solution (max-norm)."""
    table = tuple(tuple(p) for p in table)
    found = [(s.x, s.y) for s in solutions if s.verified]
    if not table:
        return ExpectedComparison(table, None, not found)
    if not found:
        return ExpectedComparison(table, None, False)
    worst = float(max(min(max(abs(x - fx), abs(y - fy)) for fx, fy in found) for x, y in table))
    matched = bool(len(found) == len(table) and worst <= EXPECTED_TOL)
    return ExpectedComparison(table, worst, matched)


def _oracle_default_range(solutions):
    xs = [s.x for s in solutions if s.admissible]
    if not xs:
        return (0.01, 2.0)
    return (0.5 * min(xs), 1.25 * max(xs))


def run(config: SystemConfig, *, verify: bool = True, oracle: bool = False,
        oracle_range=None, oracle_samples: int = 400, timings: bool = False) -> CycleReport:
    """Run the pipeline on ``config``.

    Stage failures are re-raised as :class:`StageError` tagged with the
    stage name. Wall-clock timings are recorded only when ``timings`` is set,
    so that default reports are reproducible byte for byte.
    """
    clock: dict[str, float] = {}

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            out = fn()
        except (Rejected, StageError):
            raise
        except Exception as exc:
            raise StageError(name, exc) from exc
        clock[name] = round((time.perf_counter() - t0) * 1e3, 3)
        log.info("stage %s done", name)
        return out

    sp, cs = config.saddle, config.center
    pair = stage("closing", lambda: closing_pair(sp, cs))
    cands = stage("solve", lambda: candidates(sp, cs, pair, config.solver))
    log.debug("%d solutions, %d admissible", len(cands), sum(c.admissible for c in cands))

    solutions = list(cands)
    summaries = []
    if verify:
        def do_verify():
            for k, c in enumerate(solutions):
                if not c.admissible:
                    continue
                try:
                    vc = verify_cycle(sp, cs, c, config.integrator)
                except Rejected as rej:
                    log.info("candidate x=%.9g rejected: %s", c.x, rej)
                    solutions[k] = CycleCandidate(
                        c.x, c.y, c.residual_ps, c.residual_pi, c.crossing_x_axis,
                        c.crossing_y_axis, c.admissible, False,
                        c.notes + (f"Rejected: {rej.reason}",))
                    continue
                solutions[k] = vc.candidate
                summaries.append(CycleSummary.of(vc))
        stage("verify", do_verify)

    oracle_summary = None
    if oracle:
        lo_hi = tuple(float(v) for v in (oracle_range or _oracle_default_range(solutions)))

        def do_oracle():
            pts = oracle_scan(sp, cs, lo_hi, oracle_samples, config.integrator)
            return pts

        pts: list[FixedPoint] = stage("oracle", do_oracle)
        lo, hi = lo_hi
        ref = [s.x for s in solutions if s.verified and lo <= s.x <= hi]
        agrees = bool(len(ref) == len(pts) and all(
            abs(a - p.x) <= ORACLE_MATCH_TOL for a, p in zip(sorted(ref), pts)))
        oracle_summary = OracleSummary(lo_hi, oracle_samples,
                                       tuple((float(p.x), float(p.y)) for p in pts), agrees)

    expected = None
    if config.expected is not None:
        expected = compare_expected(config.expected, solutions)

    count = sum(1 for s in solutions if s.verified)
    return CycleReport(
        kind=cs.kind.value, d_i=pair.d_i, bezout=pair.bezout,
        max_admissible=pair.max_admissible, solutions=tuple(solutions), cycle_count=count,
        timings=clock if timings else {}, name=config.name, cycles=tuple(summaries),
        oracle=oracle_summary, expected=expected,
    )


def verified_cycles(config: SystemConfig, report: CycleReport) -> list[VerifiedCycle]:
    """Re-integrate the verified solutions of ``report`` to obtain their arcs."""
    out = []
    for s in report.solutions:
        if s.verified:
            out.append(verify_cycle(config.saddle, config.center, s, config.integrator))
    return out
