"""
Closing polynomials for crossing cycles through ``(x, 0)`` and ``(0, y)``.

A crossing cycle meets the switching curve at ``p = (x, 0)`` and
``q = (0, y)`` with ``x, y > 0``; both first integrals must take equal
values at ``p`` and ``q``. The saddle condition is the quadratic ``P_S``,
the center condition the denominator-free polynomial ``P_i`` of total
degree ``d_i`` = 3, 4, 5, 6 for Q1..Q4. Bezout then allows at most
``2 d_i`` isolated solutions, one of which is always the origin.

Two independent constructions of ``P_i`` are provided: closed-form
coefficient formulas (:func:`closing_poly_center`) and numeric clearing of
the composed integral (:func:`cleared_difference`). They agree up to a
nonzero constant factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .fields import CenterKind, CenterSystem, SaddleParams, integral_polys
from .polycore import DEFAULT_TRIM, BivariatePoly, UnivariatePoly, trim

__all__ = [
    "DegreeMismatch",
    "BoundReport",
    "ClosingPair",
    "EXPECTED_DEGREE",
    "bound_report",
    "closing_poly_saddle",
    "closing_poly_center",
    "cleared_difference",
    "closing_pair",
]

EXPECTED_DEGREE = {CenterKind.Q1: 3, CenterKind.Q2: 4, CenterKind.Q3: 5, CenterKind.Q4: 6}


class DegreeMismatch(ArithmeticError):
    pass


class BoundReport(NamedTuple):
    d: int
    bezout: int
    max_admissible: int


def bound_report(kind) -> BoundReport:
    """Degree of ``P_i``, the Bezout number ``2 d`` and the cycle bound ``2 d - 1``."""
    d = EXPECTED_DEGREE[CenterKind.parse(kind)]
    return BoundReport(d, 2 * d, 2 * d - 1)


def closing_poly_saddle(p: SaddleParams) -> BivariatePoly:
    """``P_S = -2 C x - 2 B y + delta y^2 - mu x^2`` (twice ``H_S(x,0) - H_S(0,y)``)."""
    return BivariatePoly({(1, 0): -2 * p.C, (0, 1): -2 * p.B,
                          (0, 2): p.delta, (2, 0): -p.mu})


def _p1(a, b, c, al, be, ga):
    ra, rb = a * a + al * al, b * b + be * be
    return {
        (2, 1): 2 * ra * be,
        (1, 2): -2 * al * rb,
        (1, 1): -4 * c * (b * al - a * be),
        (2, 0): ra * (1 + 2 * ga),
        (0, 2): -rb * (1 + 2 * ga),
        (1, 0): 2 * (a * c - c * c * al + 2 * a * c * ga + al * ga + al * ga * ga),
        (0, 1): -2 * (b * c - c * c * be + 2 * b * c * ga + be * ga + be * ga * ga),
    }


def _p2(a, b, c, al, be, ga):
    g1 = 1 + ga
    return {
        (2, 2): a * a * be * be - b * b * al * al,
        (1, 1): -4 * c * g1 * (b * al - a * be),
        (2, 1): -2 * (b * c * al * al - a * a * be - al * al * be - a * a * be * ga),
        (1, 2): -2 * (b * b * al - a * c * be * be + al * be * be + b * b * al * ga),
        (2, 0): (a * a + al * al - c * c * al * al + 2 * (a * a + al * al) * ga
                 + a * a * ga * ga),
        (0, 2): (-b * b - be * be + c * c * be * be - 2 * (b * b + be * be) * ga
                 - b * b * ga * ga),
        (1, 0): 2 * g1 * (a * c - c * c * al + a * c * ga + al * ga),
        (0, 1): -2 * g1 * (b * c - c * c * be + b * c * ga + be * ga),
    }


def _p3(a, b, c, al, be, ga):
    s = -3 + 16 * ga
    k = 9 + 32 * c * c - 24 * ga
    return {
        (1, 4): -256 * b ** 4 * al,
        (4, 1): 256 * a ** 4 * be,
        (3, 1): 128 * (8 * a ** 3 * c * be - 3 * a * a * al * be),
        (1, 3): -128 * (8 * b ** 3 * c * al - 3 * b * b * al * be),
        (1, 1): -32 * c * (b * al - a * be) * k,
        (3, 0): 8 * a * a * (8 * a * c - 3 * al) * s,
        (0, 3): -8 * b * b * (8 * b * c - 3 * be) * s,
        (2, 0): -3 * s * (-3 * a * a - 32 * a * a * c * c + 16 * a * c * al
                          - 3 * al * al + 8 * a * a * ga),
        (4, 0): 16 * (-3 * a ** 4 + 16 * a ** 4 * ga),
        (0, 2): 3 * s * (-3 * b * b - 32 * b * b * c * c + 16 * b * c * be
                         - 3 * be * be + 8 * b * b * ga),
        (0, 4): -16 * (-3 * b ** 4 + 16 * b ** 4 * ga),
        (1, 0): -2 * k * (3 * a * c + 4 * c * c * al - 16 * a * c * ga + 3 * al * ga),
        (1, 2): -48 * (3 * b * b * al + 32 * b * b * c * c * al - 16 * b * c * al * be
                       + 3 * al * be * be - 8 * b * b * al * ga),
        (0, 1): 2 * k * (3 * b * c + 4 * c * c * be - 16 * b * c * ga + 3 * be * ga),
        (2, 1): 48 * (3 * a * a * be + 32 * a * a * c * c * be - 16 * a * c * al * be
                      + 3 * al * al * be - 8 * a * a * be * ga),
    }


def _p4(a, b, c, al, be, ga):
    g = 3 + 8 * ga
    q = -9 + 256 * c * c - 96 * ga - 128 * ga * ga
    return {
        (2, 4): 18432 * (2 * a * a - al * al) * be ** 4,
        (4, 2): -18432 * al ** 4 * (2 * b * b - be * be),
        (2, 3): 9216 * (2 * a * a - al * al) * be ** 3 * g,
        (3, 2): -9216 * al ** 3 * (2 * b * b - be * be) * g,
        (2, 2): -3456 * (b * al - a * be) * (b * al + a * be) * g * g,
        (1, 1): -576 * c * (b * al - a * be) * g ** 3,
        (1, 4): 4608 * be ** 4 * (16 * a * c - 3 * al - 8 * al * ga),
        (1, 3): -2304 * be ** 3 * g * (-16 * a * c + 3 * al + 8 * al * ga),
        (4, 1): -4608 * al ** 4 * (16 * b * c - 3 * be - 8 * be * ga),
        (3, 1): 2304 * al ** 3 * g * (-16 * b * c + 3 * be + 8 * be * ga),
        (2, 1): 288 * g * g * (-24 * b * c * al * al + 3 * a * a * be + 3 * al * al * be
                               + 8 * a * a * be * ga + 8 * al * al * be * ga),
        (1, 2): -288 * g * g * (3 * b * b * al - 24 * a * c * be * be + 3 * al * be * be
                                + 8 * b * b * al * ga + 8 * al * be * be * ga),
        (4, 0): -144 * al ** 4 * q,
        (0, 4): 144 * be ** 4 * q,
        (3, 0): -72 * al ** 3 * g * q,
        (0, 3): 72 * be ** 3 * g * q,
        (1, 0): 18 * g ** 3 * (3 * a * c - 16 * c * c * al + 8 * a * c * ga
                               + 3 * al * ga + 4 * al * ga * ga),
        (2, 0): 9 * g * g * (9 * a * a + 9 * al * al - 384 * c * c * al * al
                             + 48 * a * a * ga + 120 * al * al * ga
                             + 64 * a * a * ga * ga + 160 * al * al * ga * ga),
        (0, 1): -18 * g ** 3 * (3 * b * c - 16 * c * c * be + 8 * b * c * ga
                                + 3 * be * ga + 4 * be * ga * ga),
        (0, 2): -9 * g * g * (9 * b * b + 9 * be * be - 384 * c * c * be * be
                              + 48 * b * b * ga + 120 * be * be * ga
                              + 64 * b * b * ga * ga + 160 * be * be * ga * ga),
    }


_CLOSED_FORMS = {CenterKind.Q1: _p1, CenterKind.Q2: _p2, CenterKind.Q3: _p3, CenterKind.Q4: _p4}


def closing_poly_center(sys: CenterSystem, rel_tol: float = DEFAULT_TRIM,
                        check_degree: bool = True) -> BivariatePoly:
    """Closed-form ``P_i`` with the affine coefficients substituted.

    Raises
    ------
    DegreeMismatch
        If the trimmed total degree differs from ``d_i`` (a degenerate map
        for this kind) and ``check_degree`` is set.
    """
    poly = trim(BivariatePoly(_CLOSED_FORMS[sys.kind](*sys.affine.as_tuple())), rel_tol)
    expected = EXPECTED_DEGREE[sys.kind]
    if check_degree and poly.deg_total != expected:
        raise DegreeMismatch(
            f"{sys.kind.value}: closing polynomial has degree {poly.deg_total}, expected {expected}")
    return poly


def _compose_on_axis(poly: BivariatePoly, u_line, v_line) -> UnivariatePoly:
    # substitute u = u_line(t), v = v_line(t) into poly(u, v)
    out = UnivariatePoly()
    for (i, j), c in poly.coeffs.items():
        out = out + (u_line ** i) * (v_line ** j) * c
    return out


def cleared_difference(sys: CenterSystem, rel_tol: float = DEFAULT_TRIM) -> BivariatePoly:
    """Numerically cleared ``H_i(x, 0) - H_i(0, y)``.

    With ``H_i = N / D`` restricted to the axes as ``N_x/D_x`` and
    ``N_y/D_y``, returns ``N_x(x) D_y(y) - N_y(y) D_x(x)``, expanded and
    trimmed. The cancelling top-degree terms (e.g. ``x^4 y^4`` for Q4)
    vanish to rounding and are removed by the trim.
    """
    T = sys.affine
    num, den = integral_polys(sys.kind)
    ux = UnivariatePoly([T.c1, T.a1])
    vx = UnivariatePoly([T.gamma1, T.alpha1])
    uy = UnivariatePoly([T.c1, T.b1])
    vy = UnivariatePoly([T.gamma1, T.beta1])
    nx, dx = _compose_on_axis(num, ux, vx), _compose_on_axis(den, ux, vx)
    ny, dy = _compose_on_axis(num, uy, vy), _compose_on_axis(den, uy, vy)
    raw = BivariatePoly.outer(nx, dy) - BivariatePoly.outer(dx, ny)
    # the constant terms cancel exactly in exact arithmetic
    raw = BivariatePoly({k: c for k, c in raw.coeffs.items() if k != (0, 0)})
    return trim(raw, rel_tol)


@dataclass(frozen=True)
class ClosingPair:
    kind: CenterKind
    ps: BivariatePoly
    pi: BivariatePoly
    d_i: int
    bezout: int
    max_admissible: int


def closing_pair(saddle: SaddleParams, center: CenterSystem,
                 rel_tol: float = DEFAULT_TRIM) -> ClosingPair:
    ps = closing_poly_saddle(saddle)
    pi = closing_poly_center(center, rel_tol)
    d, bezout, max_adm = bound_report(center.kind)
    return ClosingPair(center.kind, ps, pi, d, bezout, max_adm)
