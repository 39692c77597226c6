"""
Real solutions of the closing system and their admissibility.

Pipeline: eliminate ``y`` with a resultant, isolate the real ``x`` roots,
back-substitute into ``P_S``, keep pairs on which ``P_i`` is small, polish
each pair with a damped Newton iteration on ``(P_S, P_i)`` and deduplicate.
A solution becomes an admissible cycle candidate when both coordinates are
positive, the axis denominators of the center integral are nonzero and
both fields cross the switching curve transversally in the same direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .closing import ClosingPair, closing_pair
from .fields import (DENOMINATOR_TOL, CenterSystem, SaddleParams, center_denominator,
                     center_field, saddle_field)
from .polycore import BivariatePoly, UnivariatePoly, real_roots, resultant_eliminate_y

__all__ = [
    "SolverOpts",
    "ClosingSolution",
    "CycleCandidate",
    "Tangency",
    "BoundViolation",
    "solve_closing",
    "crossing_flags",
    "crossing_test",
    "candidates",
    "admissible_candidates",
]


TANGENT_SINE = 1e-8


class Tangency(ArithmeticError):
    def __init__(self, message, where):
        super().__init__(message)
        self.where = where


class BoundViolation(AssertionError):
    """More admissible solutions than the Bezout argument allows."""


@dataclass(frozen=True)
class SolverOpts:
    x_max: float = 1e3
    tol_root: float = 1e-12
    tol_match: float = 1e-4
    pos_tol: float = 1e-8
    tol_tangent: float = 1e-9
    dedup_tol: float = 1e-8
    tol_residual: float = 1e-10

    def __post_init__(self):
        for name in ("x_max", "tol_root", "tol_match", "pos_tol", "tol_tangent",
                     "dedup_tol", "tol_residual"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"solver.{name}: expected a positive number, got {v!r}")


@dataclass(frozen=True)
class ClosingSolution:
    x: float
    y: float
    residual_ps: float
    residual_pi: float
    newton_singular: bool = False


@dataclass(frozen=True)
class CycleCandidate:
    x: float
    y: float
    residual_ps: float
    residual_pi: float
    crossing_x_axis: bool
    crossing_y_axis: bool
    admissible: bool
    verified: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "x": self.x, "y": self.y,
            "residual_ps": self.residual_ps, "residual_pi": self.residual_pi,
            "crossing_x_axis": self.crossing_x_axis, "crossing_y_axis": self.crossing_y_axis,
            "admissible": self.admissible, "verified": self.verified,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CycleCandidate":
        return cls(d["x"], d["y"], d["residual_ps"], d["residual_pi"],
                   d["crossing_x_axis"], d["crossing_y_axis"], d["admissible"],
                   d["verified"], tuple(d["notes"]))


# ---------------------------------------------------------------------------
# closing system
# ---------------------------------------------------------------------------

def _quadratic_roots(c0, c1, c2):
    """Real roots of ``c2 y^2 + c1 y + c0`` with ``c2 != 0`` (cancellation-free)."""
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        # rounding-level negative discriminant still means a (double) real root
        if -disc > 1e-14 * (c1 * c1 + abs(4 * c2 * c0)):
            return []
        disc = 0.0
    s = math.sqrt(disc)
    q = -0.5 * (c1 + math.copysign(s, c1))
    if q == 0.0:
        return [0.0]
    return sorted({q / c2, c0 / q})


def _y_candidates(pair: ClosingPair, x: float, tol_root: float):
    py = pair.ps.in_y(x)
    c = list(py.coeffs) + [0.0] * 3
    if py.degree == 2 and c[2] != 0.0:
        return _quadratic_roots(c[0], c[1], c[2])
    if py.degree == 1:
        return [-c[0] / c[1]]
    # P_S does not involve y at this abscissa: solve P_i(x, y) = 0 directly
    qi = pair.pi.in_y(x)
    if qi.degree < 1:
        return []
    lead = abs(qi.coeffs[-1])
    bound = 1.0 + max(abs(v) for v in qi.coeffs[:-1]) / lead
    return real_roots(qi, (-bound, bound), tol=tol_root).values


def _scaled(pair, x, y):
    sps = pair.ps.residual_scale(x, y) or 1.0
    spi = pair.pi.residual_scale(x, y) or 1.0
    return pair.ps(x, y) / sps, pair.pi(x, y) / spi


def _newton_polish(pair: ClosingPair, x: float, y: float, max_iter: int = 60):
    """Damped Newton on the scaled system; returns ``(x, y, singular)``."""
    dps = (pair.ps.partial_x(), pair.ps.partial_y())
    dpi = (pair.pi.partial_x(), pair.pi.partial_y())

    def jac(x, y):
        sps = pair.ps.residual_scale(x, y) or 1.0
        spi = pair.pi.residual_scale(x, y) or 1.0
        return np.array([[dps[0](x, y) / sps, dps[1](x, y) / sps],
                         [dpi[0](x, y) / spi, dpi[1](x, y) / spi]])

    J = jac(x, y)
    rows = np.linalg.norm(J, axis=1)
    # gradients closer than ~sqrt(eps) in angle: numerically a tangency
    if rows.min() == 0.0 or abs(np.linalg.det(J)) <= TANGENT_SINE * rows[0] * rows[1]:
        return x, y, True
    r = np.array(_scaled(pair, x, y))
    for _ in range(max_iter):
        J = jac(x, y)
        try:
            step = np.linalg.solve(J, r)
        except np.linalg.LinAlgError:
            break
        t = 1.0
        norm0 = np.linalg.norm(r)
        while True:
            xn, yn = x - t * step[0], y - t * step[1]
            rn = np.array(_scaled(pair, xn, yn))
            if np.linalg.norm(rn) <= norm0 or t < 1e-6:
                break
            t *= 0.5
        moved = math.hypot(xn - x, yn - y)
        if np.linalg.norm(rn) > norm0:
            break
        x, y, r = xn, yn, rn
        if moved <= 4 * np.finfo(float).eps * (1 + math.hypot(x, y)) or not r.any():
            break
    return x, y, False


def solve_closing(pair: ClosingPair, x_max: float = 1e3, tol: float = 1e-4, *,
                  tol_root: float = 1e-12, dedup_tol: float = 1e-8) -> list[ClosingSolution]:
    """Real solutions of ``P_S = P_i = 0`` with ``0 <= x <= x_max``, sorted by ``x``.

    ``tol`` is the relative threshold on ``|P_i|`` used to pair a resultant
    root with a back-substituted ordinate before polishing. The origin is
    always included.

    Raises
    ------
    CommonComponent
        When ``P_S`` and ``P_i`` share a factor.
    """
    if x_max <= 0 or tol <= 0:
        raise ValueError("x_max and tol must be positive")
    res = resultant_eliminate_y(pair.ps, pair.pi)
    margin = 1e-7
    xs = real_roots(res, (-margin, x_max), tol=tol_root).values if res.degree >= 1 else []
    raw: list[ClosingSolution] = []
    if (0, 0) not in pair.ps.coeffs and (0, 0) not in pair.pi.coeffs:
        raw.append(ClosingSolution(0.0, 0.0, 0.0, 0.0))
    for x0 in xs:
        for y0 in _y_candidates(pair, x0, tol_root):
            if abs(pair.pi(x0, y0)) > tol * (pair.pi.residual_scale(x0, y0) or 1.0):
                continue
            x, y, singular = _newton_polish(pair, x0, y0)
            if x < -margin or x > x_max * (1 + 1e-12):
                continue
            raw.append(ClosingSolution(float(x), float(y), float(abs(pair.ps(x, y))),
                                       float(abs(pair.pi(x, y))), bool(singular)))
    raw.sort(key=lambda s: (s.x, s.y))
    out: list[ClosingSolution] = []
    for s in raw:
        dup = next((k for k, o in enumerate(out)
                    if abs(o.x - s.x) <= dedup_tol and abs(o.y - s.y) <= dedup_tol), None)
        if dup is None:
            out.append(s)
        elif s.residual_ps + s.residual_pi < out[dup].residual_ps + out[dup].residual_pi:
            out[dup] = s
    if out and abs(out[0].x) <= dedup_tol and abs(out[0].y) <= dedup_tol:
        out[0] = ClosingSolution(0.0, 0.0, 0.0, 0.0)
    return out


# ---------------------------------------------------------------------------
# crossing and admissibility
# ---------------------------------------------------------------------------

def crossing_flags(plus_p, minus_p, plus_q, minus_q, tol_tangent: float = 1e-9):
    """Transversal crossing flags at ``p`` on the x-axis branch and ``q`` on the y-axis branch.

    At ``p`` the normal component is the second one, at ``q`` the first.

    Raises
    ------
    Tangency
        If a normal component is within ``tol_tangent`` of zero.
    """
    ny_plus, ny_minus = plus_p[1], minus_p[1]
    nx_plus, nx_minus = plus_q[0], minus_q[0]
    if min(abs(ny_plus), abs(ny_minus)) <= tol_tangent:
        raise Tangency("tangency at p = (x, 0)", "p")
    if min(abs(nx_plus), abs(nx_minus)) <= tol_tangent:
        raise Tangency("tangency at q = (0, y)", "q")
    return bool(ny_plus * ny_minus > 0), bool(nx_plus * nx_minus > 0)


def crossing_test(sp: SaddleParams, cs: CenterSystem, candidate, tol_tangent: float = 1e-9):
    x, y = candidate
    if not (x > 0 and y > 0):
        raise ValueError("crossing_test needs x > 0 and y > 0")
    p, q = (x, 0.0), (0.0, y)
    return crossing_flags(saddle_field(sp, p), center_field(cs, p),
                          saddle_field(sp, q), center_field(cs, q), tol_tangent)


class _Flags(NamedTuple):
    cx: bool
    cy: bool
    notes: tuple


def _assess(sp, cs, pair, sol: ClosingSolution, opts: SolverOpts):
    notes = []
    if sol.x == 0.0 and sol.y == 0.0:
        return _Flags(False, False, ("origin",))
    if not (sol.x > opts.pos_tol and sol.y > opts.pos_tol):
        return _Flags(False, False, ("non-positive coordinate",))
    if sol.newton_singular:
        notes.append("NewtonSingular: singular Jacobian, not polished")
    sps = pair.ps.residual_scale(sol.x, sol.y) or 1.0
    spi = pair.pi.residual_scale(sol.x, sol.y) or 1.0
    if sol.residual_ps > opts.tol_residual * sps or sol.residual_pi > opts.tol_residual * spi:
        notes.append("residual above tolerance")
    for label, pt in (("p", (sol.x, 0.0)), ("q", (0.0, sol.y))):
        if abs(center_denominator(cs, pt)) <= DENOMINATOR_TOL:
            notes.append(f"DenominatorSingular at {label}")
    try:
        cx, cy = crossing_test(sp, cs, (sol.x, sol.y), opts.tol_tangent)
    except Tangency as exc:
        notes.append(f"Tangency at {exc.where}")
        return _Flags(False, False, tuple(notes))
    if not cx:
        notes.append("sliding or escaping at p")
    if not cy:
        notes.append("sliding or escaping at q")
    return _Flags(cx, cy, tuple(notes))


def candidates(sp: SaddleParams, cs: CenterSystem, pair: ClosingPair | None = None,
               opts: SolverOpts | None = None) -> list[CycleCandidate]:
    """Every closing solution in ``[0, x_max]`` with admissibility flags and notes."""
    opts = opts or SolverOpts()
    pair = pair or closing_pair(sp, cs)
    sols = solve_closing(pair, opts.x_max, opts.tol_match,
                         tol_root=opts.tol_root, dedup_tol=opts.dedup_tol)
    out = []
    for sol in sols:
        flags = _assess(sp, cs, pair, sol, opts)
        admissible = flags.cx and flags.cy and not flags.notes
        out.append(CycleCandidate(sol.x, sol.y, sol.residual_ps, sol.residual_pi,
                                  flags.cx, flags.cy, admissible, False, flags.notes))
    n_adm = sum(c.admissible for c in out)
    if n_adm > pair.max_admissible:
        raise BoundViolation(
            f"{n_adm} admissible solutions exceed the bound {pair.max_admissible}")
    return out


def admissible_candidates(sp: SaddleParams, cs: CenterSystem, pair: ClosingPair | None = None,
                          opts: SolverOpts | None = None) -> list[CycleCandidate]:
    return [c for c in candidates(sp, cs, pair, opts) if c.admissible]
