import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from crossing_cycles.polycore import (BivariatePoly, CommonComponent, ConvergenceFailure,
                                      UnivariatePoly, _refine, real_roots,
                                      resultant_eliminate_y, sylvester_matrix, trim)

X, Y = BivariatePoly.x(), BivariatePoly.y()

coef = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coef, max_size=8)


def _monic(p: UnivariatePoly) -> np.ndarray:
    c = np.array(p.coeffs)
    return c / c[-1]


class TestBivariate:
    def test_zero_coefficients_are_dropped(self):
        p = BivariatePoly({(1, 0): 0.0, (0, 1): 2.0})
        assert dict(p.coeffs) == {(0, 1): 2.0}
        assert BivariatePoly.zero().deg_total == -1

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            BivariatePoly({(0, 0): math.inf})

    def test_degrees(self):
        p = 3 * X**2 * Y - Y**3 + 1
        assert (p.deg_total, p.deg_x, p.deg_y) == (3, 2, 3)

    @given(terms, terms, coef, coef)
    def test_ring_operations_match_pointwise(self, a, b, x, y):
        p, q = BivariatePoly(a), BivariatePoly(b)
        tol = 1e-9 * (1 + p.residual_scale(x, y)) * (1 + q.residual_scale(x, y))
        assert abs((p * q)(x, y) - p(x, y) * q(x, y)) <= tol
        assert abs((p + q)(x, y) - (p(x, y) + q(x, y))) <= tol
        assert abs((p - q)(x, y) - (p(x, y) - q(x, y))) <= tol

    @given(terms)
    def test_monomial_map_round_trip(self, a):
        p = BivariatePoly(a)
        assert BivariatePoly.from_monomial_map(p.monomial_map()) == p

    def test_partials(self):
        p = X**3 * Y**2 - 2 * X * Y + 5
        assert p.partial_x() == 3 * X**2 * Y**2 - 2 * Y
        assert p.partial_y() == 2 * X**3 * Y - 2 * X

    def test_array_evaluation(self):
        p = X**2 - Y
        xs = np.array([0.0, 1.0, 2.0])
        np.testing.assert_array_equal(p(xs, xs), xs**2 - xs)

    def test_partial_substitution(self):
        p = X**2 * Y + X * Y**2 + 1
        assert p.in_y(2.0) == UnivariatePoly([1.0, 4.0, 2.0])
        assert p.in_x(3.0) == UnivariatePoly([1.0, 9.0, 3.0])

    def test_trim_is_relative(self):
        p = BivariatePoly({(1, 0): 1.0, (0, 1): 1e-14, (2, 2): 1e-11})
        assert dict(trim(p).coeffs) == {(1, 0): 1.0, (2, 2): 1e-11}


class TestUnivariate:
    def test_from_roots_and_derivative(self):
        p = UnivariatePoly.from_roots([1.0, 2.0])
        assert p == UnivariatePoly([2.0, -3.0, 1.0])
        assert p.derivative() == UnivariatePoly([-3.0, 2.0])

    def test_trailing_zeros_removed(self):
        assert UnivariatePoly([1.0, 0.0, 0.0]).degree == 0
        assert UnivariatePoly().is_zero


class TestSylvester:
    def test_matches_sympy_determinant(self):
        f, g = [1.0, -2.0, 3.0], [4.0, 5.0, -1.0, 2.0]
        S = sylvester_matrix(f, g)
        t = sp.Symbol("t")
        fs = sum(sp.Rational(c) * t**k for k, c in enumerate(f))
        gs = sum(sp.Rational(c) * t**k for k, c in enumerate(g))
        assert np.linalg.det(S) == pytest.approx(float(sp.resultant(fs, gs, t)), rel=1e-12)


class TestResultant:
    def test_parabola_and_line(self):
        # y^2 - x and y - 1 meet where x = 1
        r = resultant_eliminate_y(Y**2 - X, Y - 1)
        np.testing.assert_allclose(_monic(r), [-1.0, 1.0], atol=1e-12)

    def test_two_lines(self):
        r = resultant_eliminate_y(Y - X, Y + X)
        assert r.degree == 1
        np.testing.assert_allclose(_monic(r), [0.0, 1.0], atol=1e-12)

    def test_common_component(self):
        f = (Y - X) * (Y + 1)
        g = (Y - X) * (Y - 2)
        with pytest.raises(CommonComponent):
            resultant_eliminate_y(f, g)

    def test_matches_sympy_on_random_pair(self, rng):
        x, y = sp.symbols("x y")
        for _ in range(5):
            cf = rng.integers(-4, 5, size=(3, 3))
            cg = rng.integers(-4, 5, size=(3, 3))
            f = BivariatePoly({(i, j): float(cf[i, j]) for i in range(3) for j in range(3)})
            g = BivariatePoly({(i, j): float(cg[i, j]) for i in range(3) for j in range(3)})
            fs = sum(int(cf[i, j]) * x**i * y**j for i in range(3) for j in range(3))
            gs = sum(int(cg[i, j]) * x**i * y**j for i in range(3) for j in range(3))
            exact = sp.Poly(sp.resultant(fs, gs, y), x).all_coeffs()[::-1]
            got = resultant_eliminate_y(f, g)
            scale = max(abs(float(c)) for c in exact)
            ref = [float(c) for c in exact] + [0.0] * (len(got.coeffs) - len(exact))
            assert np.allclose(list(got.coeffs) + [0.0] * (len(ref) - len(got.coeffs)),
                               ref, atol=1e-9 * scale)

    def test_nodes_cover_degree_bound(self):
        f = X**3 * Y + Y**2 - X
        g = X * Y**3 - 1
        r = resultant_eliminate_y(f, g)
        assert r.degree <= f.deg_x * g.deg_y + g.deg_x * f.deg_y


class TestRealRoots:
    def test_triple_root(self):
        rs = real_roots(UnivariatePoly([0.0, 0.0, 0.0, 1.0]), (-1, 1))
        assert len(rs) == 1
        assert abs(rs[0].value) <= 1e-5
        assert rs[0].multiplicity_hint == 3

    def test_simple_pair(self):
        rs = real_roots(UnivariatePoly([-1.0, 0.0, 1.0]), (-2, 2))
        assert rs.values == pytest.approx([-1.0, 1.0], abs=1e-12)
        assert all(r.multiplicity_hint == 1 for r in rs)

    def test_double_root_from_critical_point(self):
        p = UnivariatePoly.from_roots([0.5, 0.5, -0.25])
        assert real_roots(p, (-1, 1)).values == pytest.approx([-0.25, 0.5], abs=1e-7)

    def test_rounding_split_double_root_is_merged(self):
        # (x - 1)^2 with last-bit perturbations, as produced by interpolation
        p = UnivariatePoly([1.0000000000000002, -2.0, 0.9999999999999992])
        rs = real_roots(p, (-1, 3))
        assert len(rs) == 1
        assert rs[0].value == pytest.approx(1.0, abs=1e-7)
        assert rs[0].multiplicity_hint == 2

    def test_no_real_roots(self):
        assert len(real_roots(UnivariatePoly([1.0, 0.0, 1.0]), (-10, 10))) == 0

    def test_interval_is_closed(self):
        assert real_roots(UnivariatePoly([-1.0, 1.0]), (1.0, 2.0)).values == [1.0]

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=7, unique=True))
    def test_recovers_separated_roots(self, roots):
        roots = sorted(roots)
        if any(b - a < 1e-2 for a, b in zip(roots, roots[1:])):
            return
        got = real_roots(UnivariatePoly.from_roots(roots), (-11, 11)).values
        assert len(got) == len(roots)
        assert got == pytest.approx(roots, abs=1e-8)

    def test_convergence_failure_reports_bracket(self):
        p = UnivariatePoly([-2.0, 0.0, 1.0])
        with pytest.raises(ConvergenceFailure) as info:
            _refine(p, p.derivative(), 0.0, 2.0, p(0.0), 1e-300, max_iter=2)
        a, b = info.value.bracket
        assert a <= math.sqrt(2) <= b
