import json
import math

import pytest
from scipy.integrate import quad

from soliton_gap.bound_chain import (
    EPS_FLOOR,
    MARGIN,
    BoundReport,
    FCurve,
    GapInputs,
    alpha,
    bg_ratio,
    c_A_eps,
    chain_constants,
    evaluate_formula,
    f_volume_bound,
    f_volume_lower,
    formula_namespace,
    full_report,
    injectivity_lower,
    log_noncollapse_constant,
    noncollapse_constant,
    sectional_lower_from_upper,
    solve_gap_epsilon,
)
from soliton_gap.errors import DomainError
from soliton_gap.spaceform import unit_ball_volume

# Bare-formula threshold for (n=3, A=1) at target 0.95 from the independent
# 30-digit mpmath oracle (scan at 10 points per decade, then bisection).
F_THRESHOLD_3_1_095 = 5.339092477644967e-09


class TestInputs:
    @pytest.mark.parametrize(
        "args",
        [(1, 1.0, 0.5, 0.1), (2.5, 1.0, 0.5, 0.1), (3, 0.0, 0.5, 0.1), (3, 1.0, 0.0, 0.1),
         (3, 1.0, 1.5, 0.1), (3, 1.0, 0.5, 0.0), (3, 1.0, 0.5, 1.0)],
    )
    def test_rejects(self, args):
        with pytest.raises(DomainError):
            GapInputs(*args)

    def test_round_trip(self):
        g = GapInputs(4, 0.3, 0.25, 0.01)
        assert GapInputs.from_dict(json.loads(json.dumps(g.to_dict()))) == g


class TestCurvatureConstants:
    @pytest.mark.parametrize("n, A, H", [(2, 5.0, 0.0), (3, 1.0, -2.0), (4, 2.0, -10.0)])
    def test_sectional_lower(self, n, A, H):
        assert sectional_lower_from_upper(n, A) == H

    @pytest.mark.parametrize("n", range(2, 8))
    def test_flat_ratio(self, n):
        assert bg_ratio(n, 0.0) == pytest.approx(2**n, rel=1e-13)

    def test_hyperbolic_plane_ratio(self):
        expected = (math.cosh(1) - 1) / (math.cosh(0.5) - 1)
        assert bg_ratio(2, -1.0) == pytest.approx(expected, rel=1e-12)

    def test_ratio_against_scipy(self):
        k = math.sqrt(2.0)
        vol = lambda r: quad(lambda s: (math.sinh(k * s) / k) ** 2, 0, r, epsabs=0, epsrel=1e-13)[0]
        assert bg_ratio(3, -2.0) == pytest.approx(vol(1.0) / vol(0.5), rel=1e-10)

    def test_ratio_rejects_positive_curvature(self):
        with pytest.raises(DomainError):
            bg_ratio(3, 1.0)


class TestNoncollapse:
    @pytest.mark.parametrize("A", [0.01, 1.0, 100.0])
    def test_two_dimensions(self, A):
        assert log_noncollapse_constant(2, A) == pytest.approx(-149.0, abs=1e-12)
        assert noncollapse_constant(2, A) == pytest.approx(math.exp(-149.0), rel=1e-12)

    def test_flat_limit_in_three_dimensions(self):
        assert log_noncollapse_constant(3, 1e-14) == pytest.approx(-297.0, abs=1e-9)

    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_monotone_in_A(self, n):
        values = [log_noncollapse_constant(n, A) for A in (0.01, 0.1, 1.0, 10.0)]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_sharp_variant_is_larger(self):
        assert log_noncollapse_constant(3, 1.0, sharp=True) > log_noncollapse_constant(3, 1.0)

    def test_deep_underflow_stays_finite_in_log(self):
        assert math.isfinite(log_noncollapse_constant(6, 10.0))
        assert noncollapse_constant(6, 10.0) == 0.0


class TestInjectivity:
    def test_flat_two_dimensional_closed_form(self):
        vol = math.pi * (math.pi / 4) ** 2 / 2
        r0 = math.pi / 4
        ball_r0 = (r0**2 / 1.0) * vol  # V_0(r0)/V_0(1) * vol
        expected = (r0 / 2) / (1 + math.pi * (2 * r0) ** 2 / ball_r0)
        got = injectivity_lower(2, 1.0, vol)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(0.02811195841080438, rel=1e-12)

    @pytest.mark.parametrize("A", [0.1, math.pi**2 / 16])
    def test_large_radius_branch_uses_unit_ball_directly(self, A):
        r0 = math.pi / (4 * math.sqrt(A))
        assert r0 >= 1
        vol = 0.3
        expected = (r0 / 2) / (1 + math.pi * (2 * r0) ** 2 / vol)
        assert injectivity_lower(2, A, vol) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("n, A, vol", [(2, 1.0, 1.0), (3, 0.2, 1e-3), (5, 4.0, 10.0)])
    def test_below_half_radius(self, n, A, vol):
        assert injectivity_lower(n, A, vol) < math.pi / (8 * math.sqrt(A))

    def test_rejects_nonpositive_volume(self):
        with pytest.raises(DomainError):
            injectivity_lower(3, 1.0, 0.0)


class TestAlphaAndC:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_alpha_limit(self, n):
        assert abs(alpha(n, 1e-16) - 1) <= 1e-3

    @pytest.mark.parametrize("n", range(2, 11))
    def test_alpha_small_eps_first_order(self, n):
        # alpha(eps) = 1 - 2 n eps^(1/4) + O(eps^(1/2)); at n = 6 the gap is 1.2e-3
        eps = 1e-16
        expected = (1 + 4 * eps**0.25 + 8 * eps**0.5) ** (-n / 2 + eps) * math.exp(eps / 2 * math.log(eps))
        assert alpha(n, eps) == pytest.approx(expected, rel=1e-14)
        assert abs(alpha(n, eps) - 1) <= 2 * n * eps**0.25

    def test_alpha_values(self):
        assert alpha(2, 1.0) == pytest.approx(1.0, rel=1e-15)
        assert alpha(4, 1.0) == pytest.approx(1 / 13, rel=1e-14)

    def test_alpha_domain(self):
        with pytest.raises(DomainError):
            alpha(3, 0.0)
        with pytest.raises(DomainError):
            alpha(3, 1.5)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_c_limit(self, n):
        assert abs(c_A_eps(n, 1.0, 1e-16) - unit_ball_volume(n)) <= 1e-4

    @pytest.mark.parametrize("A, eps", [(1.0, 0.5), (3.0, 1e-4), (0.2, 1e-10)])
    def test_c_two_dimensional_closed_form(self, A, eps):
        expected = 2 * math.pi * (1 - math.cos(math.sqrt(A) * eps**0.25)) / (A * math.sqrt(eps))
        assert c_A_eps(2, A, eps) == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_c_monotone_and_bounded(self, n):
        values = [c_A_eps(n, A, 0.01) for A in (0.1, 1.0, 10.0, 50.0)]
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert all(0 < c <= unit_ball_volume(n) for c in values)

    def test_c_domain(self):
        with pytest.raises(DomainError):
            c_A_eps(3, 100.0, 1.0)  # eps^(1/4) = 1 > pi/10


class TestFVolumeLower:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_bare_limit(self, n):
        assert 0.99 <= f_volume_bound(n, 1.0, 1e-16) <= 1.0
        values = [f_volume_bound(n, 1.0, 10.0**-k) for k in (4, 8, 16, 32, 64)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(1.0, abs=1e-14)

    def test_three_dimensional_small_eps(self):
        assert f_volume_bound(3, 1.0, 1e-16) >= 0.99

    def test_window_errors_name_the_constraint(self):
        g = GapInputs(3, 1.0, 0.5, 0.05)
        with pytest.raises(DomainError, match="C0-window"):
            f_volume_lower(g, 1e-16)
        with pytest.raises(DomainError, match="eps-window"):
            f_volume_lower(g, 2.0)
        with pytest.raises(DomainError, match="eps-window"):
            f_volume_lower(g, 0.0)

    def test_inside_window_matches_formula(self):
        g = GapInputs(2, 1.0, 1.0, 0.5)
        eps = 1e-280
        assert f_volume_lower(g, eps) == f_volume_bound(2, 1.0, eps)


class TestChain:
    @pytest.mark.parametrize("n, A, v", [(2, 1.0, 1.0), (3, 1.0, 0.5), (4, 0.1, 0.1), (6, 10.0, 1.0)])
    def test_consistency(self, n, A, v):
        c = chain_constants(GapInputs(n, A, v, 0.1))
        assert c.H == -c.C1 <= 0
        assert c.C2 >= 2**n * (1 - 1e-14)
        assert c.log_volB1_lower == c.log_C_noncollapse + math.log(v)
        assert c.volB1_lower == c.C_noncollapse * v
        assert c.C0 <= math.pi / math.sqrt(A)
        assert c.log_inj_lower < math.log(math.pi / (8 * math.sqrt(A)))
        assert c.log_eps_cap <= 4 * c.log_C0

    def test_two_dimensional_chain(self):
        c = chain_constants(GapInputs(2, 1.0, 1.0, 0.5))
        assert (c.C1, c.H) == (0.0, 0.0)
        assert c.C2 == pytest.approx(4.0, rel=1e-14)
        assert c.log_C_noncollapse == pytest.approx(-149.0, abs=1e-12)
        assert c.eps_cap > EPS_FLOOR


class TestSolver:
    def test_two_dimensional_feasible(self):
        g = GapInputs(2, 1.0, 1.0, 0.5)
        sol = solve_gap_epsilon(g)
        assert sol.feasible
        assert sol.eps_star == sol.eps_cap
        assert sol.F_at_eps_star >= 0.5
        assert f_volume_lower(g, sol.eps_star) >= 1 - g.eps_prime

    def test_target_near_zero_admits_whole_range(self):
        sol = solve_gap_epsilon(GapInputs(2, 3.0, 0.2, 1 - 1e-12))
        assert sol.eps_star == sol.eps_cap

    def test_three_dimensional_is_infeasible_with_diagnosis(self):
        sol = solve_gap_epsilon(GapInputs(3, 1.0, 0.5, 0.05))
        assert not sol.feasible and sol.eps_star is None
        assert sol.limiting_stage == "eps^(1/4) < C0"
        assert sol.log10_eps_cap < -300
        assert sol.formula_threshold == pytest.approx(F_THRESHOLD_3_1_095, rel=2e-6)
        assert f_volume_bound(3, 1.0, sol.formula_threshold) >= 0.95

    def test_nonincreasing_as_eps_prime_shrinks(self):
        for n, A, v in [(2, 1.0, 1.0), (3, 1.0, 0.5)]:
            sols = [solve_gap_epsilon(GapInputs(n, A, v, ep)) for ep in (0.2, 0.1, 0.05)]
            key = (lambda s: s.eps_star) if n == 2 else (lambda s: s.formula_threshold)
            vals = [key(s) for s in sols]
            assert all(b <= a for a, b in zip(vals, vals[1:]))

    def test_round_trip(self):
        sol = solve_gap_epsilon(GapInputs(3, 1.0, 0.5, 0.05))
        assert type(sol).from_dict(json.loads(json.dumps(sol.to_dict()))) == sol


class TestReport:
    @pytest.fixture(scope="class")
    @staticmethod
    def report():
        return full_report(GapInputs(2, 1.0, 1.0, 0.5))

    def test_fields(self, report):
        assert report.H == 0.0 and report.C2 == pytest.approx(4.0)
        assert report.log_C_noncollapse == pytest.approx(-149.0)
        assert report.eps_star == report.solution.eps_star
        assert len(report.curve.samples) >= 50
        eps = [e for e, _ in report.curve.samples]
        assert eps == sorted(eps) and all(0 < e <= min(1.0, report.eps_cap) for e in eps)

    def test_stage_order(self, report):
        names = [s.name for s in report.stages]
        order = ["C1", "H", "C2", "C_noncollapse", "volB1_lower", "inj_lower", "C0", "eps_star"]
        assert [names.index(k) for k in order] == sorted(names.index(k) for k in order)
        assert all(s.formula for s in report.stages)

    def test_round_trip(self, report):
        text = json.dumps(report.to_dict(), indent=2)
        again = BoundReport.from_dict(json.loads(text))
        assert json.dumps(again.to_dict(), indent=2) == text

    def test_deterministic(self, report):
        other = full_report(GapInputs(2, 1.0, 1.0, 0.5), threads=4)
        assert json.dumps(other.to_dict()) == json.dumps(report.to_dict())

    @pytest.mark.parametrize("args", [(2, 1.0, 1.0, 0.5), (3, 1.0, 0.5, 0.05), (5, 0.3, 0.2, 0.1)])
    def test_every_stage_reevaluates(self, args):
        g = GapInputs(*args)
        rep = full_report(g, curve_points=8)
        ns = formula_namespace(g)
        for s in rep.stages:
            value = evaluate_formula(s.formula, ns)
            if s.value is None:
                assert value is None, s.name
            else:
                assert value == pytest.approx(s.value, rel=1e-12, abs=1e-300), s.name
            ns[s.name] = s.value

    def test_admissibility_from_stored_curve(self, report):
        for ep in (0.5, 0.1, 1e-3, 1e-9):
            flags = report.curve.admissible(ep)
            assert flags == [F >= 1 - ep for _, F in report.curve.samples]
        rows = report.curve.to_list()
        assert FCurve.from_list(rows) == report.curve

    def test_infeasible_report_has_empty_curve(self):
        rep = full_report(GapInputs(3, 1.0, 0.5, 0.05))
        assert rep.eps_star is None and rep.curve.samples == ()
        assert rep.to_dict()["result"]["feasible"] is False

    def test_margin(self, report):
        assert report.eps_cap <= math.exp(4 * report.log_C0) * (1 - MARGIN) * (1 + 1e-12)
