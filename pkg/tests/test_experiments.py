import dataclasses
import math

import numpy as np
import pytest

from qprotect import duality
from qprotect.channels import PureQubit, protect_fidelity_pure, rho_protect_analytic
from qprotect.errors import ConfigError, UnreachableError
from qprotect.experiments import (
    FRONTIER_COLUMNS,
    SWEEP_COLUMNS,
    SweepConfig,
    frontier,
    frontier_csv,
    minimal_wm_strength,
    sweep_csv,
    sweep_time,
    sweep_w,
    verify_all,
)

P_T1 = 1.0 - math.exp(-0.5)
P_T5 = 1.0 - math.exp(-2.5)


class TestConfig:
    def test_mode_defaults(self):
        t_cfg = SweepConfig(mode="time-sweep").resolve()
        assert len(t_cfg.t_list) == 20 and t_cfg.w_list == [0.1]
        w_cfg = SweepConfig(mode="w-sweep").resolve()
        assert len(w_cfg.w_list) == 20 and w_cfg.t_list == [1.0]
        f_cfg = SweepConfig(mode="frontier").resolve()
        assert len(f_cfg.theta_grid) == 24 and f_cfg.t_list == [1.0]
        assert f_cfg.theta_grid[0] == pytest.approx(0.4225 * math.pi, abs=1e-9)

    def test_empty_grid_rejected(self):
        with pytest.raises(ConfigError):
            SweepConfig(mode="time-sweep", t_list=[]).resolve()

    def test_bad_mode(self):
        with pytest.raises(ConfigError):
            SweepConfig(mode="zigzag").resolve()

    def test_bad_strengths(self):
        with pytest.raises(ConfigError):
            SweepConfig(w_list=[0.5, 1.0]).resolve()

    def test_bad_theta(self):
        with pytest.raises(ConfigError):
            SweepConfig(theta_grid=[4.0]).resolve()

    def test_negative_time(self):
        with pytest.raises(ConfigError):
            SweepConfig(t_list=[-1.0]).resolve()

    def test_mode_mismatch(self):
        with pytest.raises(ConfigError):
            sweep_time(SweepConfig(mode="w-sweep"))
        with pytest.raises(ConfigError):
            sweep_w(SweepConfig(mode="time-sweep"))
        with pytest.raises(ConfigError):
            frontier(SweepConfig(mode="time-sweep"))


class TestSweepTime:
    def test_anchor_rows_at_t5(self):
        recs = sweep_time(SweepConfig(t_list=[5.0]))
        by_theta = {round(r.theta, 6): r for r in recs}
        r1 = by_theta[round(math.pi / 3, 6)]
        r2 = by_theta[round(math.pi / 2, 6)]
        r3 = by_theta[round(math.pi, 6)]
        assert r1.F_ad_theory == pytest.approx(0.8472, abs=1e-4)
        assert r1.F_protect_theory == pytest.approx(0.9572, abs=1e-4)
        assert r2.F_ad_theory == pytest.approx(0.6433, abs=1e-4)
        assert r2.F_protect_theory == pytest.approx(0.8538, abs=1e-4)
        assert r3.F_ad_theory == pytest.approx(1 - P_T5, abs=1e-10)
        assert r3.F_protect_theory == pytest.approx(0.5476, abs=1e-4)
        assert r1.p == pytest.approx(P_T5, abs=1e-12)
        assert r1.wr == pytest.approx(0.1 + P_T5 * 0.9, abs=1e-12)

    def test_zero_time_limit(self):
        recs = sweep_time(SweepConfig(t_list=[0.0], theta_grid=[2.0]))
        (r,) = recs
        assert r.F_ad_theory == pytest.approx(1.0, abs=1e-12)
        assert r.F_protect_theory == pytest.approx(1.0, abs=1e-12)

    def test_theory_sim_agreement_default_grid(self):
        recs = sweep_time(SweepConfig())
        assert len(recs) == 60
        assert max(r.max_residual for r in recs) <= 1e-8

    def test_protection_beats_damping_at_positive_p(self):
        recs = sweep_time(SweepConfig())
        assert all(r.F_protect_theory > r.F_ad_theory for r in recs if r.p > 0)
        assert all(r.F_protect_sim > r.F_ad_sim for r in recs if r.p > 0)


class TestSweepW:
    def test_zero_w_row_matches_reversal_only_filter(self):
        recs = sweep_w(SweepConfig(mode="w-sweep", w_list=[0.0], theta_grid=[2.0]))
        (r,) = recs
        state = PureQubit(2.0)
        assert r.F_protect_theory == pytest.approx(
            protect_fidelity_pure(state, 0.0, P_T1), abs=1e-10
        )
        _, n = rho_protect_analytic(state.rho(), 0.0, P_T1, P_T1)
        assert r.N_theory == pytest.approx(n, abs=1e-12)

    def test_near_one_w_recovers_state(self):
        recs = sweep_w(SweepConfig(mode="w-sweep", w_list=[0.999], theta_grid=[math.pi / 2]))
        assert recs[0].F_protect_theory >= 1.0 - 1e-3

    def test_monotone_along_list(self):
        cfg = SweepConfig(mode="w-sweep", theta_grid=[math.pi / 2])
        recs = sweep_w(cfg)
        fids = [r.F_protect_theory for r in recs]
        ns = [r.N_theory for r in recs]
        assert all(b >= a - 1e-14 for a, b in zip(fids, fids[1:]))
        assert all(b < a for a, b in zip(ns, ns[1:]))

    def test_theory_sim_agreement(self):
        recs = sweep_w(SweepConfig(mode="w-sweep", theta_grid=[1.9]))
        assert max(r.max_residual for r in recs) <= 1e-8


class TestFrontier:
    def test_boundary_angle_needs_no_protection(self):
        pts = frontier(SweepConfig(mode="frontier", theta_grid=[0.4225 * math.pi]))
        (pt,) = pts
        assert pt.w_star == 0.0
        assert pt.F == pytest.approx(0.9507, abs=1e-3)
        assert pt.N == pytest.approx(0.6971, abs=1e-3)

    def test_equatorial_and_polar_anchors(self):
        pts = frontier(SweepConfig(mode="frontier", theta_grid=[math.pi / 2, math.pi]))
        eq, polar = pts
        assert eq.w_star == pytest.approx(0.4352235372140433, abs=1e-6)
        assert eq.N == pytest.approx(0.3806, abs=1e-3)
        assert polar.w_star == pytest.approx(0.8662371535506935, abs=1e-6)
        assert polar.N == pytest.approx(0.0854, abs=1e-3)
        assert eq.F >= 0.95 - 1e-9 and polar.F >= 0.95 - 1e-9

    def test_default_grid_monotonicity(self):
        pts = frontier(SweepConfig(mode="frontier"))
        ws = [pt.w_star for pt in pts]
        ns = [pt.N for pt in pts]
        assert all(b >= a - 1e-12 for a, b in zip(ws, ws[1:]))
        assert all(b <= a + 1e-12 for a, b in zip(ns, ns[1:]))

    def test_unreachable_target(self):
        with pytest.raises(UnreachableError):
            minimal_wm_strength(math.pi, P_T1, 1.0)

    def test_bisection_finds_smallest_strength(self):
        theta = 2.4
        w_star = minimal_wm_strength(theta, P_T1, 0.95)
        state = PureQubit(theta)
        assert protect_fidelity_pure(state, w_star, P_T1) >= 0.95
        assert protect_fidelity_pure(state, w_star - 1e-6, P_T1) < 0.95


class TestCsv:
    def test_sweep_schema_and_determinism(self):
        cfg = SweepConfig(t_list=[1.0, 5.0], theta_grid=[math.pi / 2])
        text1 = sweep_csv(sweep_time(cfg))
        text2 = sweep_csv(sweep_time(SweepConfig(t_list=[1.0, 5.0], theta_grid=[math.pi / 2])))
        assert text1 == text2
        lines = text1.strip().split("\n")
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert len(lines) == 3

    def test_frontier_schema(self):
        text = frontier_csv(frontier(SweepConfig(mode="frontier", theta_grid=[math.pi])))
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(FRONTIER_COLUMNS)
        first = lines[1].split(",")
        assert float(first[0]) == pytest.approx(1.0, abs=1e-12)

    def test_twelve_significant_digits(self):
        text = sweep_csv(sweep_time(SweepConfig(t_list=[5.0], theta_grid=[math.pi / 2])))
        row = text.strip().split("\n")[1].split(",")
        p_field = row[SWEEP_COLUMNS.index("p")]
        assert p_field == f"{P_T5:.12g}"


class TestVerifyAll:
    def test_fresh_build_passes(self):
        report = verify_all()
        for check in report.checks:
            assert check.passed, check.line()
        assert report.all_passed
        names = [c.name for c in report.checks]
        assert "branch_completeness" in names
        assert "circuit_vs_analytic_state" in names

    def test_fault_injection_fails_completeness(self):
        def corrupted_builder(kind, strength):
            g = duality.build_gadget(kind, strength)
            return dataclasses.replace(g, w_mat=g.w_mat * np.array([[1, -1], [1, 1]]))

        report = verify_all(_gadget_builder=corrupted_builder)
        failed = {c.name for c in report.checks if not c.passed}
        assert "branch_completeness" in failed
        assert not report.all_passed

    def test_empty_grid_rejected(self):
        with pytest.raises(ConfigError):
            verify_all(strength_grid=[])

    def test_report_lines_format(self):
        report = verify_all()
        lines = report.lines()
        assert len(lines) == len(report.checks)
        assert all(line.startswith("PASS") for line in lines)
