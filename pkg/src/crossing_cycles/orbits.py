"""
Orbit integration and geometric verification of crossing cycles.

Each half of a candidate cycle is integrated in its own piece: the saddle
arc from ``p = (x, 0)`` through the open first quadrant to the y-axis and
the center arc from ``q = (0, y)`` through the complement back to the
x-axis. Both arcs share a time direction chosen so that the saddle field
leaves ``p`` into the first quadrant.

Integration uses scipy's explicit DOP853 stepper. Switching-curve events
are located on the dense output of every accepted step by bisection, with
a guard evaluated at the crossing point. Running the events on the dense
output (rather than through ``solve_ivp``'s terminal events) lets an arc
start on the very line it will later cross without an immediate trigger.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import DOP853

from .fields import (CenterSystem, DenominatorSingular, SaddleParams, center_denominator,
                     center_field, center_integral, saddle_field, saddle_integral)
from .solver import CycleCandidate

__all__ = [
    "IntegratorOpts",
    "ArcStatus",
    "ArcResult",
    "VerifiedCycle",
    "Rejected",
    "NoConnection",
    "AxisEvent",
    "FixedPoint",
    "integrate_until_event",
    "saddle_arc",
    "center_arc",
    "verify_cycle",
    "half_map_plus",
    "half_map_minus",
    "oracle_scan",
]

SINGULAR_TOL = 1e-8
DRIFT_TOL = 1e-6
MATCH_TOL = 1e-5


@dataclass(frozen=True)
class IntegratorOpts:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_arc_time: float = 1e3
    event_tol: float = 1e-10
    escape_radius: float = 1e6

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "max_arc_time", "event_tol", "escape_radius"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"integrator.{name}: expected a positive number, got {v!r}")


class ArcStatus(str, enum.Enum):
    Closed = "Closed"
    LeftRegion = "LeftRegion"
    Timeout = "Timeout"
    SingularityHit = "SingularityHit"


@dataclass(frozen=True)
class ArcResult:
    endpoint: tuple[float, float]
    status: ArcStatus
    integral_drift: float
    samples: tuple[tuple[float, float], ...]
    time: float

    def to_dict(self) -> dict:
        return {"endpoint": list(self.endpoint), "status": self.status.value,
                "integral_drift": self.integral_drift, "time": self.time,
                "samples": [list(s) for s in self.samples]}

    @classmethod
    def from_dict(cls, d: dict) -> "ArcResult":
        return cls(tuple(d["endpoint"]), ArcStatus(d["status"]), d["integral_drift"],
                   tuple(tuple(s) for s in d["samples"]), d["time"])


@dataclass(frozen=True)
class VerifiedCycle:
    candidate: CycleCandidate
    plus_arc: ArcResult
    minus_arc: ArcResult
    period_estimate: float
    direction: int

    def to_dict(self) -> dict:
        return {"candidate": self.candidate.to_dict(), "plus_arc": self.plus_arc.to_dict(),
                "minus_arc": self.minus_arc.to_dict(),
                "period_estimate": self.period_estimate, "direction": self.direction}

    @classmethod
    def from_dict(cls, d: dict) -> "VerifiedCycle":
        return cls(CycleCandidate.from_dict(d["candidate"]), ArcResult.from_dict(d["plus_arc"]),
                   ArcResult.from_dict(d["minus_arc"]), d["period_estimate"], d["direction"])


class Rejected(Exception):
    REASONS = ("ArcMismatch", "LeftRegion", "SingularityHit", "OrientationClash", "Timeout")

    def __init__(self, reason: str, detail: str = ""):
        if reason not in self.REASONS:
            raise ValueError(f"unknown rejection reason {reason!r}")
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


class NoConnection(Exception):
    def __init__(self, status: ArcStatus, detail: str = ""):
        super().__init__(f"{status.value}: {detail}" if detail else status.value)
        self.status = status


@dataclass(frozen=True)
class AxisEvent:
    """Sign change of coordinate ``axis`` (0 for x, 1 for y) in direction ``sense``.

    ``sense`` is -1 for a positive-to-nonpositive crossing and +1 for the
    reverse. ``guard`` is evaluated at the located crossing point; the
    event fires with ``status`` only if it holds.
    """

    axis: int
    sense: int
    status: ArcStatus
    guard: Callable[[float, float], bool] = lambda x, y: True


def _locate(dense, t0, t1, axis, tol, max_iter=200):
    """Bisect the dense output for a sign change of coordinate ``axis``.

    The bracket is shrunk in time down to ``tol`` relative, so the located
    point is accurate even where the orbit meets the line at a shallow angle.
    """
    g0 = dense(t0)[axis]
    lo, hi = t0, t1
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm = dense(mid)[axis]
        if gm == 0.0:
            return mid, dense(mid)
        if (gm > 0) == (g0 > 0):
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(hi)):
            break
    return hi, dense(hi)


def integrate_until_event(field, start, direction: int, events, opts: IntegratorOpts | None = None,
                          integral=None, singular=None, substeps: int = 8) -> ArcResult:
    """Integrate ``direction * field`` from ``start`` until an event fires.

    Parameters
    ----------
    field : callable ``(x, y) -> (fx, fy)``
    direction : +1 (forward time) or -1 (backward time)
    events : sequence of :class:`AxisEvent`
    integral : optional first integral used to report the drift
    singular : optional callable whose zero set the arc must not reach
        (|value| < 1e-8 gives ``SingularityHit``)

    The returned ``time`` is the elapsed time magnitude.
    """
    opts = opts or IntegratorOpts()
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    x0, y0 = float(start[0]), float(start[1])
    f0 = field(x0, y0)
    if math.hypot(f0[0], f0[1]) <= 1e-12:
        raise ValueError("start point is an equilibrium")

    def rhs(_t, z):
        fx, fy = field(z[0], z[1])
        return np.array([direction * fx, direction * fy])

    h0 = integral(x0, y0) if integral is not None else 0.0
    drift = 0.0
    samples = [(x0, y0)]
    solver = DOP853(rhs, 0.0, np.array([x0, y0]), opts.max_arc_time,
                    rtol=opts.rel_tol, atol=opts.abs_tol)

    def finish(point, status, t):
        nonlocal drift
        if integral is not None:
            try:
                drift = max(drift, abs(integral(*point) - h0) / (1 + abs(h0)))
            except DenominatorSingular:
                drift = math.inf
        if samples[-1] != tuple(point):
            samples.append((float(point[0]), float(point[1])))
        return ArcResult((float(point[0]), float(point[1])), status, drift, tuple(samples), t)

    s_prev = singular(x0, y0) if singular is not None else None
    while True:
        t_prev, z_prev = solver.t, solver.y.copy()
        msg = solver.step()
        if solver.status == "failed":
            return finish(z_prev, ArcStatus.Timeout, t_prev)
        dense = solver.dense_output()
        # a single step may cross a line and come back; scan a sub-grid
        grid = np.linspace(t_prev, solver.t, substeps + 1)
        pts = np.asarray(dense(grid)).T
        pts[0] = z_prev
        for k in range(substeps):
            ta, tb, za, zb = grid[k], grid[k + 1], pts[k], pts[k + 1]
            hits = []
            for ev in events:
                g0, g1 = za[ev.axis], zb[ev.axis]
                if ev.sense < 0 and g0 > 0 >= g1 or ev.sense > 0 and g0 < 0 <= g1:
                    t_hit, z_hit = _locate(dense, ta, tb, ev.axis, opts.event_tol)
                    z_hit = np.array(z_hit, dtype=float)
                    z_hit[ev.axis] = 0.0
                    if ev.guard(z_hit[0], z_hit[1]):
                        hits.append((t_hit, ev.status, z_hit))
            if singular is not None:
                s_new = singular(zb[0], zb[1])
                if s_new * s_prev < 0 or (abs(s_new) < SINGULAR_TOL and not hits):
                    return finish(zb, ArcStatus.SingularityHit, tb)
                s_prev = s_new
            if hits:
                t_hit, status, z_hit = min(hits, key=lambda h: h[0])
                return finish(z_hit, status, t_hit)
            samples.append((float(zb[0]), float(zb[1])))
            if integral is not None:
                drift = max(drift, abs(integral(zb[0], zb[1]) - h0) / (1 + abs(h0)))
        z_new = pts[-1]
        if not np.all(np.isfinite(z_new)) or math.hypot(z_new[0], z_new[1]) > opts.escape_radius:
            return finish(z_new, ArcStatus.Timeout, solver.t)
        if solver.status == "finished" or msg is not None:
            return finish(z_new, ArcStatus.Timeout, solver.t)


# ---------------------------------------------------------------------------
# the two half-arcs
# ---------------------------------------------------------------------------

def _direction_at(sp: SaddleParams, x: float) -> int:
    """Time sign that makes the saddle field leave ``(x, 0)`` into y > 0."""
    dy = saddle_field(sp, (x, 0.0))[1]
    if dy == 0.0:
        raise NoConnection(ArcStatus.LeftRegion, "saddle field tangent at p")
    return 1 if dy > 0 else -1


def saddle_arc(sp: SaddleParams, x: float, direction: int,
               opts: IntegratorOpts | None = None) -> ArcResult:
    """Saddle orbit from ``(x, 0)`` until it meets an axis again.

    ``Closed`` means it reached the positive y-axis; ``LeftRegion`` means
    it came back to the x-axis or passed the origin.
    """
    events = (
        AxisEvent(0, -1, ArcStatus.Closed, lambda x, y: y > 0),
        AxisEvent(0, -1, ArcStatus.LeftRegion, lambda x, y: y <= 0),
        AxisEvent(1, -1, ArcStatus.LeftRegion),
    )
    return integrate_until_event(lambda a, b: saddle_field(sp, (a, b)), (x, 0.0), direction,
                                 events, opts, integral=lambda a, b: saddle_integral(sp, (a, b)))


def center_arc(cs: CenterSystem, y: float, direction: int,
               opts: IntegratorOpts | None = None) -> ArcResult:
    """Center orbit from ``(0, y)`` through the complement to the positive x-axis.

    ``LeftRegion`` means it re-entered the first quadrant across the y-axis.
    """
    events = (
        AxisEvent(1, 1, ArcStatus.Closed, lambda x, y: x > 0),
        AxisEvent(0, 1, ArcStatus.LeftRegion, lambda x, y: y > 0),
    )

    def integral(a, b):
        return center_integral(cs, (a, b))

    return integrate_until_event(lambda a, b: center_field(cs, (a, b)), (0.0, y), direction,
                                 events, opts, integral=integral,
                                 singular=lambda a, b: center_denominator(cs, (a, b)))


def verify_cycle(sp: SaddleParams, cs: CenterSystem, candidate: CycleCandidate,
                 opts: IntegratorOpts | None = None) -> VerifiedCycle:
    """Integrate both halves of a candidate and check that they close up.

    Raises
    ------
    Rejected
        With ``reason`` one of ArcMismatch, LeftRegion, SingularityHit,
        OrientationClash, Timeout.
    """
    opts = opts or IntegratorOpts()
    x, y = candidate.x, candidate.y
    if not (x > 0 and y > 0):
        raise Rejected("LeftRegion", "candidate is not in the open first quadrant")
    try:
        s = _direction_at(sp, x)
    except NoConnection:
        raise Rejected("OrientationClash", "saddle field tangent at p") from None
    if s * center_field(cs, (0.0, y))[0] >= 0:
        raise Rejected("OrientationClash", "center field does not leave q into x < 0")

    plus = saddle_arc(sp, x, s, opts)
    _check_arc(plus, "saddle")
    if abs(plus.endpoint[1] - y) > MATCH_TOL * (1 + abs(y)):
        raise Rejected("ArcMismatch", f"saddle arc reaches y = {plus.endpoint[1]:.10g}, not {y:.10g}")

    minus = center_arc(cs, y, s, opts)
    _check_arc(minus, "center")
    if abs(minus.endpoint[0] - x) > MATCH_TOL * (1 + abs(x)):
        raise Rejected("ArcMismatch", f"center arc reaches x = {minus.endpoint[0]:.10g}, not {x:.10g}")

    return VerifiedCycle(replace(candidate, verified=True), plus, minus,
                         plus.time + minus.time, s)


def _check_arc(arc: ArcResult, label: str):
    if arc.status is not ArcStatus.Closed:
        raise Rejected(arc.status.value, f"{label} arc ended at {arc.endpoint}")
    if arc.integral_drift > DRIFT_TOL:
        raise Rejected("ArcMismatch", f"{label} arc integral drift {arc.integral_drift:.3g}")


# ---------------------------------------------------------------------------
# half-return maps and the brute-force oracle
# ---------------------------------------------------------------------------

class _Half(NamedTuple):
    value: float
    direction: int


def _plus(sp, x, opts) -> _Half:
    s = _direction_at(sp, x)
    arc = saddle_arc(sp, x, s, opts)
    if arc.status is not ArcStatus.Closed:
        raise NoConnection(arc.status)
    return _Half(arc.endpoint[1], s)


def _minus(cs, y, opts) -> _Half:
    fx = center_field(cs, (0.0, y))[0]
    if fx == 0.0:
        raise NoConnection(ArcStatus.LeftRegion, "center field tangent at q")
    s = 1 if fx < 0 else -1
    arc = center_arc(cs, y, s, opts)
    if arc.status is not ArcStatus.Closed:
        raise NoConnection(arc.status)
    return _Half(arc.endpoint[0], s)


def half_map_plus(sp: SaddleParams, x: float, opts: IntegratorOpts | None = None) -> float:
    """Ordinate where the saddle orbit through ``(x, 0)`` meets the positive y-axis."""
    return _plus(sp, x, opts).value


def half_map_minus(cs: CenterSystem, y: float, opts: IntegratorOpts | None = None) -> float:
    """Abscissa where the center orbit through ``(0, y)`` meets the positive x-axis."""
    return _minus(cs, y, opts).value


class FixedPoint(NamedTuple):
    x: float
    y: float
    residual: float


def oracle_scan(sp: SaddleParams, cs: CenterSystem, x_range, n_samples: int = 400,
                opts: IntegratorOpts | None = None, bisect_tol: float = 1e-8,
                continuity_tol: float = 1e-6) -> list[FixedPoint]:
    """Fixed points of the composed half-maps found by sampling and bisection.

    ``g(x) = half_map_minus(half_map_plus(x)) - x`` is evaluated only where
    both halves connect and use the same time direction. Sign changes are
    bisected to ``bisect_tol``; a bracket whose limit does not satisfy
    ``|g| <= continuity_tol (1 + x)`` is a jump and is discarded.
    """
    opts = opts or IntegratorOpts()
    lo, hi = map(float, x_range)
    if not (0 < lo < hi) or n_samples < 2:
        raise ValueError("x_range must satisfy 0 < lo < hi and n_samples >= 2")

    def g(x):
        try:
            a = _plus(sp, x, opts)
            b = _minus(cs, a.value, opts)
        except (NoConnection, DenominatorSingular):
            return None
        if a.direction != b.direction:
            return None
        return b.value - x, a.value

    xs = np.linspace(lo, hi, n_samples)
    vals = [g(float(x)) for x in xs]
    found: list[FixedPoint] = []
    for k in range(n_samples - 1):
        va, vb = vals[k], vals[k + 1]
        if va is None or vb is None:
            continue
        a, b = float(xs[k]), float(xs[k + 1])
        if va[0] == 0.0:
            found.append(FixedPoint(a, va[1], 0.0))
            continue
        if va[0] * vb[0] > 0 or vb[0] == 0.0:
            continue
        ga = va[0]
        ok = True
        while b - a > bisect_tol:
            m = 0.5 * (a + b)
            vm = g(m)
            if vm is None:
                ok = False
                break
            if (vm[0] > 0) == (ga > 0):
                a, ga = m, vm[0]
            else:
                b = m
        if not ok:
            continue
        xm = 0.5 * (a + b)
        vm = g(xm)
        if vm is None or abs(vm[0]) > continuity_tol * (1 + xm):
            continue
        found.append(FixedPoint(xm, vm[1], abs(vm[0])))
    if vals[-1] is not None and vals[-1][0] == 0.0:
        found.append(FixedPoint(float(xs[-1]), vals[-1][1], 0.0))
    return found
