"""
Polynomial arithmetic for the closing-condition solver.

Dense-ish bivariate polynomials with float coefficients, univariate
polynomials in the power basis, resultant elimination of ``y`` by
evaluation and interpolation at Chebyshev nodes, and real-root isolation
by recursive critical-point splitting followed by bisection and Newton
polishing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial
from numpy.polynomial import chebyshev as npcheb

__all__ = [
    "PolynomialError",
    "CommonComponent",
    "ConvergenceFailure",
    "BivariatePoly",
    "UnivariatePoly",
    "Root",
    "RootSet",
    "trim",
    "resultant_eliminate_y",
    "sylvester_matrix",
    "real_roots",
]

EPS = np.finfo(float).eps
DEFAULT_TRIM = 1e-12
DEFAULT_DEDUP = 1e-8


class PolynomialError(ArithmeticError):
    pass


class CommonComponent(PolynomialError):
    """The resultant vanishes identically: ``f`` and ``g`` share a factor."""


class ConvergenceFailure(PolynomialError):
    def __init__(self, message, bracket):
        super().__init__(f"{message} (bracket {bracket[0]!r}, {bracket[1]!r})")
        self.bracket = bracket


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------

def _clean_terms(terms) -> dict:
    out = {}
    for key, c in terms:
        i, j = int(key[0]), int(key[1])
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent {(i, j)}")
        c = float(c)
        if not math.isfinite(c):
            raise ValueError(f"non-finite coefficient for x^{i} y^{j}")
        c = out.get((i, j), 0.0) + c
        if c == 0.0:
            out.pop((i, j), None)
        else:
            out[(i, j)] = c
    return out


@dataclass(frozen=True, eq=False)
class BivariatePoly:
    """Real polynomial in ``x`` and ``y`` stored as ``{(i, j): c}`` for ``c x^i y^j``.

    Exact zeros are never stored. The zero polynomial has all degrees
    equal to ``-1``.
    """

    coeffs: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        terms = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        clean = dict(sorted(_clean_terms(terms).items()))
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    # -- construction ------------------------------------------------------
    @classmethod
    def zero(cls) -> "BivariatePoly":
        return cls({})

    @classmethod
    def constant(cls, c: float) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls({(1, 0): 1.0})

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls({(0, 1): 1.0})

    @classmethod
    def from_array(cls, arr) -> "BivariatePoly":
        """Build from a dense array with ``arr[i, j]`` the coefficient of ``x^i y^j``."""
        arr = np.asarray(arr, dtype=float)
        return cls({(i, j): arr[i, j] for i, j in zip(*np.nonzero(arr))})

    @classmethod
    def outer(cls, px: "UnivariatePoly", py: "UnivariatePoly") -> "BivariatePoly":
        """The product ``px(x) * py(y)``."""
        return cls({(i, j): a * b for i, a in enumerate(px.coeffs)
                    for j, b in enumerate(py.coeffs)})

    # -- degrees -------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def deg_total(self) -> int:
        return max((i + j for i, j in self.coeffs), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    @property
    def scale(self) -> float:
        """Largest coefficient magnitude (0 for the zero polynomial)."""
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def residual_scale(self, x, y) -> float:
        """Magnitude against which a value at ``(x, y)`` counts as small."""
        r = max(1.0, abs(x), abs(y))
        return self.scale * r ** max(self.deg_total, 0)

    # -- evaluation --------------------------------------------------------
    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.deg_x + 1, self.deg_y + 1)) if self.coeffs else np.zeros((1, 1))
        for (i, j), c in self.coeffs.items():
            arr[i, j] = c
        return arr

    def __call__(self, x, y):
        arr = self.to_array()
        # nested Horner: in y for each row, then in x over the rows
        acc = 0.0
        for i in range(arr.shape[0] - 1, -1, -1):
            row = 0.0
            for j in range(arr.shape[1] - 1, -1, -1):
                row = row * y + arr[i, j]
            acc = acc * x + row
        return acc

    def eval(self, x, y):
        return self(x, y)

    def in_y(self, x: float) -> "UnivariatePoly":
        """Restriction ``y -> p(x, y)`` at a fixed abscissa."""
        out = [0.0] * (self.deg_y + 1)
        for (i, j), c in self.coeffs.items():
            out[j] += c * x ** i
        return UnivariatePoly(out)

    def in_x(self, y: float) -> "UnivariatePoly":
        """Restriction ``x -> p(x, y)`` at a fixed ordinate."""
        out = [0.0] * (self.deg_x + 1)
        for (i, j), c in self.coeffs.items():
            out[i] += c * y ** j
        return UnivariatePoly(out)

    def partial_x(self) -> "BivariatePoly":
        return BivariatePoly({(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i})

    def partial_y(self) -> "BivariatePoly":
        return BivariatePoly({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j})

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return BivariatePoly.constant(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BivariatePoly(list(self.coeffs.items()) + list(other.coeffs.items()))

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return BivariatePoly({k: c * other for k, c in self.coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = [((i1 + i2, j1 + j2), c1 * c2)
                 for (i1, j1), c1 in self.coeffs.items()
                 for (i2, j2), c2 in other.coeffs.items()]
        return BivariatePoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = BivariatePoly.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def trim(self, rel_tol: float = DEFAULT_TRIM) -> "BivariatePoly":
        return trim(self, rel_tol)

    def monomial_map(self) -> dict:
        """JSON-friendly ``{"i,j": c}`` view."""
        return {f"{i},{j}": c for (i, j), c in self.coeffs.items()}

    @classmethod
    def from_monomial_map(cls, data: Mapping[str, float]) -> "BivariatePoly":
        terms = []
        for key, c in data.items():
            i, j = key.split(",")
            terms.append(((int(i), int(j)), c))
        return cls(terms)

    def __repr__(self):
        body = ", ".join(f"x^{i}y^{j}: {c!r}" for (i, j), c in self.coeffs.items())
        return f"BivariatePoly({{{body}}})"


def trim(p: BivariatePoly, rel_tol: float = DEFAULT_TRIM) -> BivariatePoly:
    """Drop coefficients below ``rel_tol`` times the largest one.

    An all-zero input comes back as the zero polynomial (``is_zero`` true).
    """
    if rel_tol < 0:
        raise ValueError("rel_tol must be >= 0")
    if rel_tol == 0 or p.is_zero:
        return p
    cut = rel_tol * p.scale
    return BivariatePoly({k: c for k, c in p.coeffs.items() if abs(c) >= cut})


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

class UnivariatePoly:
    """Power-basis polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[float] = ()):
        c = [float(v) for v in coeffs]
        if not all(math.isfinite(v) for v in c):
            raise ValueError("non-finite coefficient")
        while c and c[-1] == 0.0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots, lead: float = 1.0) -> "UnivariatePoly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-r, 1.0])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def scale(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __call__(self, x):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def abs_sum(self, x) -> float:
        """``sum |c_k| |x|^k``, the natural size of a value at ``x``."""
        ax = abs(x)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * ax + abs(c)
        return acc

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def trim(self, rel_tol: float = DEFAULT_TRIM) -> "UnivariatePoly":
        if rel_tol < 0:
            raise ValueError("rel_tol must be >= 0")
        c = list(self.coeffs)
        cut = rel_tol * self.scale
        while c and abs(c[-1]) < cut:
            c.pop()
        return UnivariatePoly(c)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = UnivariatePoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (n - len(self.coeffs))
        b = other.coeffs + (0.0,) * (n - len(other.coeffs))
        return UnivariatePoly([p + q for p, q in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, UnivariatePoly) else -float(other))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return UnivariatePoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return UnivariatePoly()
        return UnivariatePoly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UnivariatePoly([1.0])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePoly({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# resultant
# ---------------------------------------------------------------------------

def sylvester_matrix(f: Iterable[float], g: Iterable[float]) -> np.ndarray:
    """Sylvester matrix of two coefficient lists given lowest degree first.

    The formal degrees are ``len(f) - 1`` and ``len(g) - 1``; vanishing
    leading coefficients are kept in place.
    """
    f = list(f)[::-1]
    g = list(g)[::-1]
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    S = np.zeros((size, size))
    for r in range(n):
        S[r, r:r + m + 1] = f
    for r in range(m):
        S[n + r, r:r + n + 1] = g
    return S


def _formal_y_coeffs(p: BivariatePoly, x: float, deg: int) -> list:
    out = [0.0] * (deg + 1)
    for (i, j), c in p.coeffs.items():
        out[j] += c * x ** i
    return out


def resultant_eliminate_y(f: BivariatePoly, g: BivariatePoly,
                          interval: tuple[float, float] = (-1.0, 1.0),
                          rel_tol: float = DEFAULT_TRIM) -> UnivariatePoly:
    """Resultant of ``f`` and ``g`` with respect to ``y``, as a polynomial in ``x``.

    The Sylvester determinant is evaluated at
    ``deg_x(f) deg_y(g) + deg_x(g) deg_y(f) + 1`` Chebyshev nodes spread
    over ``interval`` (LU with partial pivoting) and interpolated.

    Raises
    ------
    CommonComponent
        If every node value is negligible against the Hadamard bound of
        its Sylvester matrix.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of a zero polynomial")
    m, n = f.deg_y, g.deg_y
    if m + n < 1:
        raise ValueError("at least one polynomial must depend on y")
    lo, hi = interval
    if not lo < hi:
        raise ValueError("empty interpolation interval")
    deg = f.deg_x * n + g.deg_x * m
    nodes = npcheb.chebpts1(deg + 1)
    xs = 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes
    vals = np.empty(deg + 1)
    bounds = np.empty(deg + 1)
    for k, xk in enumerate(xs):
        S = sylvester_matrix(_formal_y_coeffs(f, xk, m), _formal_y_coeffs(g, xk, n))
        vals[k] = np.linalg.det(S)
        bounds[k] = np.prod(np.linalg.norm(S, axis=1))
    if np.max(np.abs(vals)) <= rel_tol * np.max(bounds):
        raise CommonComponent("resultant vanishes identically; f and g share a factor")
    cheb = npcheb.chebfit(nodes, vals, deg)
    cut = rel_tol * np.max(np.abs(cheb))
    while len(cheb) > 1 and abs(cheb[-1]) < cut:
        cheb = cheb[:-1]
    power = Chebyshev(cheb, domain=[lo, hi]).convert(kind=Polynomial)
    return UnivariatePoly(power.coef)


# ---------------------------------------------------------------------------
# real roots
# ---------------------------------------------------------------------------

class Root(NamedTuple):
    value: float
    multiplicity_hint: int
    residual: float


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Root, ...] = ()

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, k):
        return self.roots[k]

    @property
    def values(self) -> list[float]:
        return [r.value for r in self.roots]


def _eval_tol(p: UnivariatePoly, x: float) -> float:
    return 8 * max(p.degree, 1) * EPS * p.abs_sum(x)


def _refine(p, dp, a, b, fa, tol, max_iter=400):
    """Safeguarded Newton inside a sign-change bracket ``[a, b]``."""
    x = 0.5 * (a + b)
    for _ in range(max_iter):
        fx = p(x)
        if fx == 0.0 or abs(fx) <= _eval_tol(p, x) * 0.125:
            return x
        if (fx < 0) == (fa < 0):
            a, fa = x, fx
        else:
            b = x
        if b - a <= tol * max(1.0, abs(x)):
            return x
        d = dp(x)
        xn = x - fx / d if d != 0.0 else a - 1.0
        if not (a < xn < b):
            xn = 0.5 * (a + b)
        if xn == x:
            return x
        x = xn
    raise ConvergenceFailure("bisection/Newton did not converge", (a, b))


def _multiplicity(p: UnivariatePoly, r: float) -> int:
    m = 1
    d = p.derivative()
    while not d.is_zero and d.degree >= 1:
        if abs(d(r)) > 1e-6 * d.abs_sum(r):
            break
        m += 1
        d = d.derivative()
    return m


def _isolate(p: UnivariatePoly, lo: float, hi: float, tol: float) -> list:
    if p.degree <= 0:
        return []
    if p.degree == 1:
        r = -p.coeffs[0] / p.coeffs[1]
        return [r] if lo <= r <= hi else []
    dp = p.derivative()
    crit = sorted({c for c in _isolate(dp, lo, hi, tol) if lo < c < hi})
    knots = [lo] + crit + [hi]
    found = []
    for a, b in zip(knots[:-1], knots[1:]):
        fa, fb = p(a), p(b)
        if fa == 0.0:
            found.append(a)
        elif fb != 0.0 and (fa < 0) != (fb < 0):
            found.append(_refine(p, dp, a, b, fa, tol))
    if p(hi) == 0.0:
        found.append(hi)
    # even-multiplicity roots show up as critical points with a vanishing value
    found.extend(c for c in crit if abs(p(c)) <= _eval_tol(p, c))
    return sorted(found)


def real_roots(p: UnivariatePoly, interval: tuple[float, float], tol: float = 1e-12,
               dedup_tol: float = DEFAULT_DEDUP) -> RootSet:
    """All real roots of ``p`` in the closed ``interval``.

    The interval is split at the real critical points of ``p`` (found the
    same way, recursively), so every piece is monotone and holds at most one
    root. Sign-change pieces are refined by safeguarded Newton until the
    bracket is below ``tol`` relative or the value is at rounding level;
    critical points where ``p`` vanishes to rounding are reported as roots
    of even multiplicity. Neighbouring roots closer than ``dedup_tol``, or
    with ``p`` at rounding level halfway between them, are merged.

    ``multiplicity_hint`` counts derivatives that also vanish at the root.
    It is advisory and never removes a root.
    """
    lo, hi = map(float, interval)
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.degree <= 0:
        return RootSet(())
    raw = _isolate(p, lo, hi, tol)
    dp = p.derivative()
    clusters: list[list[float]] = []
    for r in raw:
        # a multiple root can surface as a cluster of rounding-level sign
        # changes; merge neighbours with no significant value between them
        if clusters:
            prev = clusters[-1][-1]
            mid = 0.5 * (r + prev)
            if abs(r - prev) <= dedup_tol or abs(p(mid)) <= _eval_tol(p, mid):
                clusters[-1].append(r)
                continue
        clusters.append([r])
    # representative: smallest residual, then flattest point (nearest a multiple root)
    roots = [min(c, key=lambda r: (abs(p(r)), abs(dp(r)))) for c in clusters]
    return RootSet(tuple(Root(r, _multiplicity(p, r), abs(p(r))) for r in roots))
