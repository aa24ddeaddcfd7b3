"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <k>: PASS|FAIL ...`` line (also
collected into the pytest terminal summary) and then asserts the criterion
at its stated tolerance.
"""
import io
import math
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import f_volume_bound_mp
from soliton_gap.bound_chain import (
    GapInputs,
    chain_constants,
    f_volume_bound,
    f_volume_lower,
    solve_gap_epsilon,
)
from soliton_gap.cli import main
from soliton_gap.models import (
    Cylinder,
    Gaussian,
    Sphere,
    f_volume,
    sublevel_identity_residual,
    volume_growth_check,
    logsob_deficit,
    standard_logsob_profiles,
    sublevel_volume,
)
from soliton_gap.numerics import weighted_tail_gamma, weighted_tail_quadrature, weighted_tail
from soliton_gap.spaceform import SpaceFormSpec, gunther_lower_bound, model_volume, unit_ball_volume


def record(number, title, ok, detail, elapsed=None, budget=None):
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s" + (f" / limit {budget:g}s]" if budget else "]")
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {title}: {detail}{timing}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def test_1_gaussian_unit_density():
    t0 = time.perf_counter()
    errs = {n: abs(f_volume(Gaussian(n)) - 1.0) for n in range(2, 7)}
    elapsed = time.perf_counter() - t0
    worst = max(errs.values())
    ok = worst <= 1e-8 and elapsed < 1.0
    record(1, "Gaussian unit f-volume, n=2..6", ok, f"max |Vol_f - 1| = {worst:.3g} (tol 1e-8)", elapsed, 1)
    assert ok


def test_2_tail_identity():
    t0 = time.perf_counter()
    errs = {
        n: abs((4 * math.pi) ** (-n / 2) * n * unit_ball_volume(n) * weighted_tail(n, 0.0, 0.0) - 1.0)
        for n in range(2, 11)
    }
    elapsed = time.perf_counter() - t0
    worst = max(errs.values())
    ok = worst <= 1e-10 and elapsed < 1.0
    record(2, "tail identity, n=2..10", ok, f"max deviation {worst:.3g} (tol 1e-10)", elapsed, 1)
    assert ok


def _models():
    for n in range(2, 7):
        yield Gaussian(n)
        yield Sphere(n)
        if n >= 3:
            yield Cylinder(n)


def test_3_sublevel_identity():
    t0 = time.perf_counter()
    worst, bad_sign, count = 0.0, [], 0
    for m in _models():
        for k in range(1, 101):
            r = k / 10
            res = sublevel_identity_residual(m, r)
            worst = max(worst, res.residual / (1.0 + res.volume))
            if not res.sign_ok:
                bad_sign.append((m.kind, m.n, r))
            count += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and not bad_sign and elapsed < 5.0
    detail = f"{count} points, max residual/(1+V) = {worst:.3g} (tol 1e-9), sign violations {len(bad_sign)}"
    record(3, "sublevel volume identity on all models", ok, detail, elapsed, 5)
    assert ok


def test_4_growth_bound_sharpness():
    t0 = time.perf_counter()
    r0 = 0.1
    grid = [k / 10 for k in range(2, 101)]
    gauss = {n: volume_growth_check(Gaussian(n), 0.0, r0, grid).max_equality_gap for n in range(2, 7)}
    cyl_reports = {n: volume_growth_check(Cylinder(n), (n - 1) / 2, r0, grid) for n in range(3, 7)}
    cyl = {n: rep.max_equality_gap for n, rep in cyl_reports.items()}
    elapsed = time.perf_counter() - t0
    g_ok = max(gauss.values()) <= 1e-9
    c_ok = max(cyl.values()) <= 1e-9
    holds = all(rep.passed and rep.ratio_nondecreasing for rep in cyl_reports.values())
    ok = g_ok and c_ok and elapsed < 5.0
    detail = (
        f"Gaussian delta=0 max gap {max(gauss.values()):.3g}; "
        f"Cylinder delta=(n-1)/2 max gap {max(cyl.values()):.3g} (tol 1e-9 for equality; "
        f"inequalities {'hold' if holds else 'VIOLATED'}, ratio nondecreasing)"
    )
    record(4, "volume growth bounds are equalities", ok, detail, elapsed, 5)
    assert g_ok, "Gaussian equality case"
    assert c_ok, f"Cylinder is not an equality case: gaps {cyl}"


def test_5_gunther_flat_limit():
    worst = 0.0
    for n in range(2, 7):
        for r in (0.5, 1.0, 2.0):
            measured, _ = sublevel_volume(Gaussian(n), r)
            bound = gunther_lower_bound(n, 1e-300, r, 1e300)
            worst = max(worst, abs(measured - bound), abs(bound - unit_ball_volume(n) * r**n))
    ok = worst <= 1e-10
    record(5, "comparison bound flat limit on the Gaussian model", ok, f"max deviation {worst:.3g} (tol 1e-10)")
    assert ok


def test_6_space_form_closed_forms():
    cases = {
        1.0: (math.pi, lambda r: 2 * math.pi * (1 - math.cos(r))),
        0.0: (3.0, lambda r: math.pi * r * r),
        -1.0: (3.0, lambda r: 2 * math.pi * (math.cosh(r) - 1)),
    }
    worst = 0.0
    for H, (hi, closed) in cases.items():
        spec = SpaceFormSpec(2, H)
        for k in range(50):
            r = hi * k / 49
            worst = max(worst, abs(model_volume(spec, r) - closed(r)))
    sphere = abs(model_volume(SpaceFormSpec(2, 1.0), math.pi) - 4 * math.pi)
    ok = worst <= 1e-10 and sphere <= 1e-10
    record(6, "two-dimensional space-form volumes", ok, f"grid max {worst:.3g}, V_1(pi) error {sphere:.3g} (tol 1e-10)")
    assert ok


def test_7_f_limit_suite():
    t0 = time.perf_counter()
    decades = [10.0**-k for k in range(16, 7, -1)]
    checked, skipped, gated_fail, nonmono = 0, [], [], []
    supp_fail, supp_nonmono = [], []
    for n in range(2, 7):
        for A in (0.1, 1.0, 10.0):
            for v in (0.1, 1.0):
                g = GapInputs(n, A, v, 0.5)
                chain = chain_constants(g)
                bare = [f_volume_bound(n, A, e) for e in decades]
                if bare[0] < 0.99:
                    supp_fail.append((n, A, v, bare[0]))
                if any(b >= a for a, b in zip(bare, bare[1:])):
                    supp_nonmono.append((n, A, v))
                if not chain.C0 > 1e-4:
                    skipped.append((n, A, v, chain.log_C0))
                    continue
                checked += 1
                F = [f_volume_lower(g, e, chain=chain) for e in decades]
                if F[0] < 0.99:
                    gated_fail.append((n, A, v, F[0]))
                if any(b >= a for a, b in zip(F, F[1:])):
                    nonmono.append((n, A, v))
    elapsed = time.perf_counter() - t0
    ok = not gated_fail and not supp_fail and elapsed < 30.0
    largest = max(s[3] for s in skipped) if skipped else float("nan")
    detail = (
        f"{checked} tuples checked, {len(skipped)} skipped because C0 <= 1e-4 "
        f"(largest log C0 = {largest:.4g}); without the C0 gate the formula gives "
        f"F(1e-16) >= 0.99 on {30 - len(supp_fail)}/30 and a monotone decade grid on {30 - len(supp_nonmono)}/30"
    )
    if nonmono or supp_nonmono:
        detail += f"; non-monotone (reported, not gating): {nonmono + supp_nonmono}"
    record(7, "F limit property suite", ok, detail, elapsed, 30)
    assert ok


def test_8_solver_self_consistency():
    rng = random.Random(20240601)
    tuples = []
    while len(tuples) < 20:
        tuples.append(
            GapInputs(2, 10 ** rng.uniform(-1, 1), rng.uniform(0.05, 1.0), rng.uniform(0.01, 0.99))
        )
    bad, feasible = [], 0
    for g in tuples:
        sol = solve_gap_epsilon(g)
        if not sol.feasible:
            continue
        feasible += 1
        target = 1 - g.eps_prime
        x = sol.eps_star
        if f_volume_lower(g, x) < target or f_volume_bound_mp(g.n, g.A, x) < target:
            bad.append((g, "F(eps_star) below target"))
        bumped = x * (1 + 1e-6)
        if bumped <= sol.eps_cap:
            if f_volume_lower(g, bumped) >= target and x != sol.eps_cap:
                bad.append((g, "eps_star not maximal"))
        elif x != sol.eps_cap:
            bad.append((g, "bumped point outside cap but eps_star != cap"))
    # higher dimensions: the threshold is infeasible; check the structured result
    # and the same post-conditions on the bare-formula threshold
    extra_rng = random.Random(7)
    for _ in range(5):
        g = GapInputs(extra_rng.randint(3, 6), 10 ** extra_rng.uniform(-1, 1), extra_rng.uniform(0.05, 1), 0.05)
        sol = solve_gap_epsilon(g)
        x = sol.formula_threshold
        if sol.feasible or sol.eps_star is not None or x is None:
            bad.append((g, "unexpected higher-dimensional result"))
            continue
        F = lambda e: f_volume_bound(g.n, g.A, e)
        if F(x) < 0.95 or F(x * (1 + 1e-6)) >= 0.95:
            bad.append((g, "bare-formula threshold post-condition"))
    ok = feasible == 20 and not bad
    record(8, "solver self-consistency", ok,
           f"{feasible}/20 random tuples feasible and re-verified; 5 higher-dimensional tuples checked; {len(bad)} problems")
    assert ok, bad


def test_9_weighted_tail_methods_agree():
    rng = random.Random(99)
    worst, worst_rel = 0.0, 0.0
    for _ in range(100):
        n = rng.randint(2, 10)
        eps = rng.uniform(0.0, 0.49)
        r0 = 0.0 if rng.random() < 0.2 else rng.uniform(0.0, 8.0)
        qv, gv = weighted_tail_quadrature(n, eps, r0), weighted_tail_gamma(n, eps, r0)
        worst = max(worst, abs(qv - gv))
        worst_rel = max(worst_rel, abs(qv - gv) / gv)
    ok = worst <= 1e-10
    record(9, "weighted tail, quadrature vs incomplete gamma", ok,
           f"100 tuples, max |difference| = {worst:.3g} (tol 1e-10), max relative {worst_rel:.3g}")
    assert ok


def test_10_gaussian_log_sobolev():
    worst_closed, lowest = 0.0, math.inf
    for n in range(2, 7):
        profiles = standard_logsob_profiles(n)
        assert len(profiles) == 10
        deficits = [logsob_deficit(p, n) for p in profiles]
        lowest = min(lowest, min(deficits))
        worst_closed = max(worst_closed, abs(deficits[0] - (n + n / 2 * math.log(4 * math.pi))))
    ok = lowest >= -1e-9 and worst_closed <= 1e-8
    record(10, "log-Sobolev deficit on the Gaussian soliton", ok,
           f"10 profiles x n=2..6, min deficit {lowest:.3g} (>= -1e-9), closed-form error {worst_closed:.3g} (tol 1e-8)")
    assert ok


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue()


def test_11_determinism(monkeypatch):
    from pathlib import Path

    monkeypatch.delenv("SOLITON_GAP_CONFIG", raising=False)
    golden = Path(__file__).parent / "golden"
    cases = [
        ("gap_n2.json", ["gap", "--n", "2", "--A", "1", "--v", "1", "--eps-prime", "0.5"]),
        ("gap_n3.json", ["gap", "--n", "3", "--A", "1", "--v", "0.5", "--eps-prime", "0.05"]),
        ("curve_n3.csv", ["curve", "--n", "3", "--A", "1", "--v", "0.5", "--points", "100",
                          "--eps-prime", "0.05", "--format", "csv"]),
        ("curve_n2.json", ["curve", "--n", "2", "--A", "1", "--v", "1", "--points", "20",
                           "--eps-min", "1e-290", "--eps-max", "1e-250"]),
    ]
    mismatched = []
    for name, argv in cases:
        outs = {_run(argv + ["--threads", t])[1] for t in ("1", "1", "4")}
        if len(outs) != 1 or outs.pop() != (golden / name).read_text():
            mismatched.append(name)
    ok = not mismatched
    record(11, "golden reports byte-identical across runs and thread counts", ok,
           f"{len(cases) - len(mismatched)}/{len(cases)} golden files reproduced")
    assert ok, mismatched


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
