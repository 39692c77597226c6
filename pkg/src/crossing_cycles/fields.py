"""
Vector fields and first integrals of the two pieces.

The upper piece (closed first quadrant) carries a linear Hamiltonian saddle

    x' = -A x - delta y + B,    y' = mu x + A y + C,

and the lower piece carries one of Loud's quadratic isochronous centers
Q1..Q4 written in affine coordinates ``(u, v) = T(x, y)``. Transformed
fields are never transcribed: they are obtained as the pushforward
``DT^{-1} F(T(x, y))`` of the base field, and transformed integrals as the
composition ``H(T(x, y))``.

All functions accept scalars or numpy arrays for the point coordinates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .polycore import BivariatePoly

__all__ = [
    "ValidationError",
    "DenominatorSingular",
    "SaddleParams",
    "CenterKind",
    "AffineMap",
    "CenterSystem",
    "Region",
    "saddle_field",
    "saddle_integral",
    "base_center_field",
    "center_field",
    "base_center_integral",
    "base_integral_parts",
    "integral_polys",
    "center_integral",
    "center_denominator",
    "classify",
    "DENOMINATOR_TOL",
]

DENOMINATOR_TOL = 1e-10
SADDLE_TOL = 1e-14
AFFINE_TOL = 1e-12


class ValidationError(ValueError):
    """Parameters violate a structural invariant (not a saddle, degenerate map, ...)."""


class DenominatorSingular(ArithmeticError):
    """A first-integral denominator is (numerically) zero at the requested point."""


@dataclass(frozen=True)
class SaddleParams:
    mu: float
    A: float
    delta: float
    B: float
    C: float

    def __post_init__(self):
        for name in ("mu", "A", "delta", "B", "C"):
            v = float(getattr(self, name))
            if not np.isfinite(v):
                raise ValidationError(f"saddle: {name} is not finite")
            object.__setattr__(self, name, v)
        if self.A * self.A - self.delta * self.mu <= SADDLE_TOL:
            raise ValidationError("saddle: not a saddle (need A^2 - delta*mu > 0)")

    def as_tuple(self):
        return (self.mu, self.A, self.delta, self.B, self.C)


class CenterKind(str, enum.Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    Q4 = "Q4"

    @classmethod
    def parse(cls, value) -> "CenterKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValidationError(f"center.kind: expected one of Q1..Q4, got {value!r}") from None


@dataclass(frozen=True)
class AffineMap:
    """``T(x, y) = (a1 x + b1 y + c1, alpha1 x + beta1 y + gamma1)``."""

    a1: float
    b1: float
    c1: float
    alpha1: float
    beta1: float
    gamma1: float

    def __post_init__(self):
        for name in ("a1", "b1", "c1", "alpha1", "beta1", "gamma1"):
            v = float(getattr(self, name))
            if not np.isfinite(v):
                raise ValidationError(f"affine: {name} is not finite")
            object.__setattr__(self, name, v)
        if abs(self.b1 * self.alpha1 - self.a1 * self.beta1) <= AFFINE_TOL:
            raise ValidationError("affine: degenerate (b1*alpha1 - a1*beta1 = 0)")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1.0, 0.0, 0.0, 0.0, 1.0, 0.0)

    @property
    def det(self) -> float:
        """Determinant of the linear part, ``a1 beta1 - b1 alpha1``."""
        return self.a1 * self.beta1 - self.b1 * self.alpha1

    @property
    def jacobian(self) -> np.ndarray:
        return np.array([[self.a1, self.b1], [self.alpha1, self.beta1]])

    def __call__(self, x, y):
        return (self.a1 * x + self.b1 * y + self.c1,
                self.alpha1 * x + self.beta1 * y + self.gamma1)

    def inverse(self, u, v):
        du, dv = u - self.c1, v - self.gamma1
        return ((self.beta1 * du - self.b1 * dv) / self.det,
                (self.a1 * dv - self.alpha1 * du) / self.det)

    def as_tuple(self):
        return (self.a1, self.b1, self.c1, self.alpha1, self.beta1, self.gamma1)


@dataclass(frozen=True)
class CenterSystem:
    kind: CenterKind
    affine: AffineMap

    def __post_init__(self):
        object.__setattr__(self, "kind", CenterKind.parse(self.kind))

    @property
    def center_point(self):
        """The equilibrium, ``T^{-1}(0, 0)``."""
        return self.affine.inverse(0.0, 0.0)


class Region(str, enum.Enum):
    SigmaPlus = "SigmaPlus"
    SigmaMinus = "SigmaMinus"
    SwitchXAxis = "SwitchXAxis"
    SwitchYAxis = "SwitchYAxis"
    Origin = "Origin"


# ---------------------------------------------------------------------------
# saddle
# ---------------------------------------------------------------------------

def saddle_field(p: SaddleParams, point):
    x, y = point
    return (-p.A * x - p.delta * y + p.B, p.mu * x + p.A * y + p.C)


def saddle_integral(p: SaddleParams, point):
    x, y = point
    return (-0.5 * p.mu * x * x - p.A * x * y - 0.5 * p.delta * y * y
            - p.C * x + p.B * y)


# ---------------------------------------------------------------------------
# centers
# ---------------------------------------------------------------------------

def base_center_field(kind: CenterKind, point):
    u, v = point
    kind = CenterKind.parse(kind)
    if kind is CenterKind.Q1:
        return (-v + u * u - v * v, u * (1 + 2 * v))
    if kind is CenterKind.Q2:
        return (-v + u * u, u * (1 + v))
    if kind is CenterKind.Q3:
        return (-v - 4.0 / 3.0 * u * u, u * (1 - 16.0 / 3.0 * v))
    return (-v + 16.0 / 3.0 * u * u - 4.0 / 3.0 * v * v, u * (1 + 8.0 / 3.0 * v))


def center_field(sys: CenterSystem, point):
    x, y = point
    T = sys.affine
    fu, fv = base_center_field(sys.kind, T(x, y))
    # DT^{-1} = [[beta1, -b1], [-alpha1, a1]] / det
    return ((T.beta1 * fu - T.b1 * fv) / T.det,
            (T.a1 * fv - T.alpha1 * fu) / T.det)


def base_integral_parts(kind: CenterKind, point):
    """Numerator and denominator of the base first integral at ``(u, v)``."""
    u, v = point
    kind = CenterKind.parse(kind)
    uu, vv = u * u, v * v
    if kind is CenterKind.Q1:
        return uu + vv, 1 + 2 * v
    if kind is CenterKind.Q2:
        return uu + vv, (1 + v) ** 2
    if kind is CenterKind.Q3:
        return 9 * (uu + vv) - 24 * uu * v + 16 * uu * uu, -3 + 16 * v
    return 9 * (uu + vv) + 24 * vv * v + 16 * vv * vv, (3 + 8 * v) ** 4


def integral_polys(kind: CenterKind) -> tuple[BivariatePoly, BivariatePoly]:
    """Numerator and denominator of the base integral as polynomials in ``(u, v)``."""
    kind = CenterKind.parse(kind)
    u, v = BivariatePoly.x(), BivariatePoly.y()
    if kind is CenterKind.Q1:
        return u * u + v * v, 1 + 2 * v
    if kind is CenterKind.Q2:
        return u * u + v * v, (1 + v) ** 2
    if kind is CenterKind.Q3:
        return 9 * (u * u + v * v) - 24 * u * u * v + 16 * u ** 4, -3 + 16 * v
    return 9 * (u * u + v * v) + 24 * v ** 3 + 16 * v ** 4, (3 + 8 * v) ** 4


def _check_den(den):
    if np.any(np.abs(den) <= DENOMINATOR_TOL):
        raise DenominatorSingular("first-integral denominator vanishes")


def base_center_integral(kind: CenterKind, point):
    num, den = base_integral_parts(kind, point)
    _check_den(den)
    return num / den


def center_denominator(sys: CenterSystem, point):
    """Denominator of the transformed integral at ``(x, y)`` (no singularity check)."""
    return base_integral_parts(sys.kind, sys.affine(*point))[1]


def center_integral(sys: CenterSystem, point):
    x, y = point
    return base_center_integral(sys.kind, sys.affine(x, y))


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

def classify(point) -> Region:
    """Exact-sign classification of a point against the switching curve."""
    x, y = point
    if x > 0 and y > 0:
        return Region.SigmaPlus
    if y == 0 and x > 0:
        return Region.SwitchXAxis
    if x == 0 and y > 0:
        return Region.SwitchYAxis
    if x == 0 and y == 0:
        return Region.Origin
    return Region.SigmaMinus
