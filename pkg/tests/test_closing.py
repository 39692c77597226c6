import numpy as np
import pytest
import sympy as sp

from crossing_cycles.closing import (DegreeMismatch, bound_report, cleared_difference,
                                     closing_pair, closing_poly_center, closing_poly_saddle)
from crossing_cycles.fields import (AffineMap, CenterKind, CenterSystem, center_denominator,
                                    center_integral, saddle_integral)

from helpers import random_affine, random_saddle

KINDS = list(CenterKind)


@pytest.mark.parametrize("kind, expected", [
    ("Q1", (3, 6, 5)), ("Q2", (4, 8, 7)), ("Q3", (5, 10, 9)), ("Q4", (6, 12, 11))])
def test_bound_report(kind, expected):
    assert tuple(bound_report(kind)) == expected


def test_saddle_clearing_identity(rng):
    for _ in range(50):
        p = random_saddle(rng)
        ps = closing_poly_saddle(p)
        for x, y in rng.uniform(-3, 3, (10, 2)):
            ref = 2 * (saddle_integral(p, (x, 0.0)) - saddle_integral(p, (0.0, y)))
            assert ps(x, y) == pytest.approx(ref, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("kind", KINDS)
def test_closed_form_vanishes_on_equal_levels(kind, rng):
    """P_i(x, y) has the sign of H_i(x,0) - H_i(0,y) times a denominator product."""
    cs = CenterSystem(kind, random_affine(rng))
    pi = closing_poly_center(cs)
    cd = cleared_difference(cs)
    for x, y in rng.uniform(-0.5, 0.5, (20, 2)):
        assert pi(x, y) == pytest.approx(cd(x, y), rel=1e-8, abs=1e-10 * cd.scale)


@pytest.mark.parametrize("kind", KINDS)
def test_cleared_difference_matches_integrals(kind, rng):
    cs = CenterSystem(kind, random_affine(rng))
    cd = cleared_difference(cs)
    for x, y in rng.uniform(-0.3, 0.3, (20, 2)):
        dx, dy = center_denominator(cs, (x, 0.0)), center_denominator(cs, (0.0, y))
        if min(abs(dx), abs(dy)) < 1e-2:
            continue
        ref = (center_integral(cs, (x, 0.0)) - center_integral(cs, (0.0, y))) * dx * dy
        assert cd(x, y) == pytest.approx(ref, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_closed_form_against_symbolic_clearing(kind):
    """Exact check at one rational map: closed form equals the symbolic cleared numerator."""
    x, y, u, v = sp.symbols("x y u v")
    base = {
        "Q1": (u**2 + v**2, 1 + 2 * v),
        "Q2": (u**2 + v**2, (1 + v) ** 2),
        "Q3": (9 * (u**2 + v**2) - 24 * u**2 * v + 16 * u**4, -3 + 16 * v),
        "Q4": (9 * (u**2 + v**2) + 24 * v**3 + 16 * v**4, (3 + 8 * v) ** 4),
    }[kind.value]
    a1, b1, c1, al, be, ga = (sp.Rational(k, 8) for k in (3, -5, 1, 2, 7, -1))
    num, den = base
    on_x = {u: a1 * x + c1, v: al * x + ga}
    on_y = {u: b1 * y + c1, v: be * y + ga}
    exact = sp.Poly(sp.expand(num.subs(on_x) * den.subs(on_y) - num.subs(on_y) * den.subs(on_x)),
                    x, y)
    cs = CenterSystem(kind, AffineMap(*(float(t) for t in (a1, b1, c1, al, be, ga))))
    pi = closing_poly_center(cs)
    ref = {m: float(c) for m, c in zip(exact.monoms(), exact.coeffs())}
    assert set(pi.coeffs) == set(ref)
    for m, c in ref.items():
        assert pi.coeffs[m] == pytest.approx(c, rel=1e-12)


@pytest.mark.parametrize("kind, d", [("Q1", 3), ("Q2", 4), ("Q3", 5), ("Q4", 6)])
def test_degrees(kind, d, rng):
    cs = CenterSystem(kind, random_affine(rng))
    assert closing_poly_center(cs).deg_total == d
    assert cleared_difference(cs).deg_total == d


def test_degree_mismatch_for_degenerate_map():
    # Q2 quartic coefficient a1^2 beta1^2 - b1^2 alpha1^2 vanishes for this map
    cs = CenterSystem("Q2", AffineMap(1.0, 1.0, 0.0, -1.0, 1.0, 0.0))
    with pytest.raises(DegreeMismatch):
        closing_poly_center(cs)
    assert closing_poly_center(cs, check_degree=False).deg_total < 4


def test_closing_pair_fields(examples):
    cfg = examples["q4"]
    pair = closing_pair(cfg.saddle, cfg.center)
    assert (pair.d_i, pair.bezout, pair.max_admissible) == (6, 12, 11)
    assert pair.ps.deg_total == 2
    assert (0, 0) not in pair.pi.coeffs and (0, 0) not in pair.ps.coeffs
