"""
Candidates, admissibility and orbit verification
================================================

The algebra returns every real solution of P_S = P_i = 0. Most are not
cycles: some lie outside the first quadrant, some sit where a field slides
along the axis, and some pass every algebraic test but the actual orbit
never joins them. Integration settles the last group.
"""

from crossing_cycles import Rejected, builtin_config, candidates, verify_cycle

for case in ("q3", "q2"):
    cfg = builtin_config(case)
    print(f"\n=== {case} ===")
    for c in candidates(cfg.saddle, cfg.center):
        tag = ", ".join(c.notes) or "admissible"
        print(f"  x = {c.x:10.6f}  y = {c.y:10.6f}   {tag}")
        if not c.admissible:
            continue
        try:
            vc = verify_cycle(cfg.saddle, cfg.center, c)
        except Rejected as exc:
            # q3: the center orbit from q lands elsewhere on the x-axis.
            # q2: the saddle orbit from p runs off to infinity.
            print(f"      rejected: {exc.reason} ({exc.detail})")
        else:
            print(f"      verified, period about {vc.period_estimate:.4f}, "
                  f"drift {max(vc.plus_arc.integral_drift, vc.minus_arc.integral_drift):.1e}")
