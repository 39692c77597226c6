import dataclasses
import math

import numpy as np
import pytest

from crossing_cycles.fields import (AffineMap, CenterSystem, SaddleParams, center_field,
                                    center_integral, saddle_integral)
from crossing_cycles.orbits import (ArcStatus, AxisEvent, IntegratorOpts, NoConnection,
                                    Rejected, half_map_minus, half_map_plus,
                                    integrate_until_event, oracle_scan, verify_cycle)
from crossing_cycles.solver import CycleCandidate, admissible_candidates

# Arc times and endpoints of the q4 example cycles from an independent
# LSODA integration with solve_ivp events (tests/oracles/gen_arc_times.py).
Q4_ARCS = [
    (0.30026829062751803, 0.35849116765298955, 3.761985438105726, 4.790967226808045),
    (0.4913097714576404, 0.6489053755265939, 4.740644154594965, 5.001712938338715),
    (0.8741927995228328, 1.4835015599343175, 6.147349664000436, 5.274996092332046),
    (1.1532996938702729, 2.8977517514775117, 7.35982467602888, 5.458714541268977),
]


def rotation(x, y):
    return (-y, x)


class TestIntegrator:
    def test_full_turn_of_a_linear_center(self):
        ev = [AxisEvent(1, +1, ArcStatus.Closed, lambda x, y: x > 0)]
        arc = integrate_until_event(rotation, (1.0, 0.0), 1, ev,
                                    integral=lambda x, y: x * x + y * y)
        assert arc.status is ArcStatus.Closed
        assert arc.time == pytest.approx(2 * math.pi, abs=1e-8)
        assert arc.endpoint == pytest.approx((1.0, 0.0), abs=1e-9)
        assert arc.integral_drift <= 1e-9

    def test_start_on_the_event_line_does_not_fire(self):
        ev = [AxisEvent(1, -1, ArcStatus.Closed)]
        arc = integrate_until_event(rotation, (1.0, 0.0), -1, ev)
        # backward time: y decreases first, so the first downward crossing is after a full turn
        assert arc.time == pytest.approx(2 * math.pi, abs=1e-8)

    def test_guard_skips_wrong_branch(self):
        ev = [AxisEvent(0, -1, ArcStatus.LeftRegion, lambda x, y: y < 0),
              AxisEvent(1, -1, ArcStatus.Closed)]
        arc = integrate_until_event(rotation, (1.0, 0.0), 1, ev)
        # x changes sign at (0, 1) first, where the guard fails
        assert arc.status is ArcStatus.Closed
        assert arc.time == pytest.approx(math.pi, abs=1e-8)

    def test_event_location_tolerance(self):
        ev = [AxisEvent(0, -1, ArcStatus.Closed)]
        arc = integrate_until_event(rotation, (1.0, 0.0), 1, ev)
        assert arc.time == pytest.approx(math.pi / 2, abs=1e-9)
        assert arc.endpoint[0] == 0.0

    def test_singularity_hit(self):
        arc = integrate_until_event(lambda x, y: (1.0, 0.0), (-1.0, 0.0), 1, [],
                                    singular=lambda x, y: x)
        assert arc.status is ArcStatus.SingularityHit
        assert abs(arc.endpoint[0]) < 0.5

    def test_timeout(self):
        arc = integrate_until_event(lambda x, y: (1.0, 0.0), (0.0, 0.0), 1, [],
                                    IntegratorOpts(max_arc_time=5.0))
        assert arc.status is ArcStatus.Timeout
        assert arc.endpoint[0] == pytest.approx(5.0)

    def test_escape_counts_as_timeout(self):
        arc = integrate_until_event(lambda x, y: (x, 0.0), (1.0, 0.0), 1, [],
                                    IntegratorOpts(escape_radius=1e3))
        assert arc.status is ArcStatus.Timeout and arc.endpoint[0] > 1e3

    def test_equilibrium_start_rejected(self):
        with pytest.raises(ValueError):
            integrate_until_event(rotation, (0.0, 0.0), 1, [])

    def test_deterministic(self):
        ev = [AxisEvent(1, +1, ArcStatus.Closed)]
        a = integrate_until_event(rotation, (1.0, 0.0), 1, ev)
        b = integrate_until_event(rotation, (1.0, 0.0), 1, ev)
        assert a == b


class TestVerification:
    @pytest.fixture
    def q4(self, examples):
        cfg = examples["q4"]
        return cfg, admissible_candidates(cfg.saddle, cfg.center)

    def test_q4_cycles_against_independent_integration(self, q4):
        cfg, cands = q4
        assert len(cands) == len(Q4_ARCS)
        for c, (x, y, t_plus, t_minus) in zip(cands, Q4_ARCS):
            vc = verify_cycle(cfg.saddle, cfg.center, c)
            assert vc.candidate.verified
            assert vc.candidate.x == pytest.approx(x, abs=1e-9)
            assert vc.plus_arc.time == pytest.approx(t_plus, abs=1e-6)
            assert vc.minus_arc.time == pytest.approx(t_minus, abs=1e-6)
            assert vc.period_estimate == pytest.approx(t_plus + t_minus, abs=2e-6)
            assert vc.plus_arc.endpoint[1] == pytest.approx(y, abs=1e-8)
            assert vc.minus_arc.endpoint[0] == pytest.approx(x, abs=1e-8)
            assert vc.plus_arc.integral_drift <= 1e-6 and vc.minus_arc.integral_drift <= 1e-6

    def test_arcs_stay_in_their_regions(self, q4):
        cfg, cands = q4
        vc = verify_cycle(cfg.saddle, cfg.center, cands[0])
        plus = np.array(vc.plus_arc.samples)
        assert np.all(plus >= -1e-9)
        minus = np.array(vc.minus_arc.samples[1:-1])
        assert not np.any((minus[:, 0] > 0) & (minus[:, 1] > 0))

    def test_integral_levels_match_at_switching_points(self, q4):
        cfg, cands = q4
        for c in cands:
            assert saddle_integral(cfg.saddle, (c.x, 0)) == pytest.approx(
                saddle_integral(cfg.saddle, (0, c.y)), abs=1e-10)
            assert center_integral(cfg.center, (c.x, 0)) == pytest.approx(
                center_integral(cfg.center, (0, c.y)), rel=1e-10)

    def test_perturbed_candidate_is_rejected(self, q4):
        cfg, cands = q4
        bad = dataclasses.replace(cands[1], y=cands[1].y + 0.05)
        with pytest.raises(Rejected) as info:
            verify_cycle(cfg.saddle, cfg.center, bad)
        assert info.value.reason == "ArcMismatch"

    def test_escaping_saddle_arc_times_out(self, examples):
        cfg = examples["q2"]
        cand = [c for c in admissible_candidates(cfg.saddle, cfg.center) if c.x > 1.0][0]
        with pytest.raises(Rejected) as info:
            verify_cycle(cfg.saddle, cfg.center, cand)
        assert info.value.reason == "Timeout"

    def test_center_arc_mismatch(self, examples):
        cfg = examples["q3"]
        cand = admissible_candidates(cfg.saddle, cfg.center)[0]
        assert cand.x == pytest.approx(0.5670600298412664)
        with pytest.raises(Rejected) as info:
            verify_cycle(cfg.saddle, cfg.center, cand)
        assert info.value.reason == "ArcMismatch"

    def test_orientation_clash(self, examples):
        cfg = examples["q1"]
        x = 0.3
        s = 1 if cfg.saddle.mu * x + cfg.saddle.C > 0 else -1
        ys = [y for y in np.linspace(0.05, 5, 400)
              if s * center_field(cfg.center, (0.0, y))[0] > 0]
        assert ys, "expected a y where the center field points into the first quadrant"
        cand = CycleCandidate(x, float(ys[0]), 0.0, 0.0, True, True, True)
        with pytest.raises(Rejected) as info:
            verify_cycle(cfg.saddle, cfg.center, cand)
        assert info.value.reason == "OrientationClash"

    def test_rejection_reason_vocabulary(self):
        with pytest.raises(ValueError):
            Rejected("Whatever")


class TestHalfMaps:
    def test_half_map_plus_follows_the_level_set(self, examples):
        cfg = examples["q1"]
        for x in (0.2, 0.4, 0.6):
            y = half_map_plus(cfg.saddle, x)
            assert saddle_integral(cfg.saddle, (0.0, y)) == pytest.approx(
                saddle_integral(cfg.saddle, (x, 0.0)), abs=1e-9)

    def test_half_maps_compose_to_identity_at_a_cycle(self, examples):
        cfg = examples["q4"]
        x, y = Q4_ARCS[2][:2]
        assert half_map_plus(cfg.saddle, x) == pytest.approx(y, abs=1e-8)
        assert half_map_minus(cfg.center, y) == pytest.approx(x, abs=1e-8)

    def test_no_connection(self):
        sp = SaddleParams(1.0, 0.0, -1.0, 0.0, 0.0)
        with pytest.raises(NoConnection):
            half_map_plus(sp, 0.5)


def test_oracle_scan_finds_q4_cycles(examples):
    cfg = examples["q4"]
    fps = oracle_scan(cfg.saddle, cfg.center, (0.1, 1.5), 120)
    assert [f.x for f in fps] == pytest.approx([a[0] for a in Q4_ARCS], abs=1e-5)
    assert [f.y for f in fps] == pytest.approx([a[1] for a in Q4_ARCS], abs=1e-5)


def test_oracle_scan_arguments():
    sp = SaddleParams(1.0, 0.0, -1.0, 0.0, 0.0)
    cs = CenterSystem("Q1", AffineMap.identity())
    with pytest.raises(ValueError):
        oracle_scan(sp, cs, (1.0, 0.5), 10)
    assert oracle_scan(sp, cs, (0.1, 1.0), 10) == []
