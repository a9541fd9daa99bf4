"""Acceptance gate: every contract the build must meet, at its tolerance.

Each test prints one ``[PASS] <criterion>`` line on success (visible with
``pytest -s``); a failed assertion surfaces as the criterion's FAIL. The
expected numbers are frozen from the closed forms evaluated independently of
the library (population/coherence algebra of the damping and filter maps).
"""

import math

import numpy as np
import pytest

from qprotect import channels, circuit, dilation, duality, qmat
from qprotect.channels import PHI_1, PHI_2, PHI_3, PureQubit, reversal_strength
from qprotect.experiments import SweepConfig, frontier, minimal_wm_strength, sweep_time

P_T5 = 0.9179150013761012   # 1 - exp(-2.5): gamma = 0.5, t = 5
P_T1 = 0.3934693402873666   # 1 - exp(-0.5): gamma = 0.5, t = 1

# Frozen closed-form values at gamma = 0.5, w = 0.1, t = 5 for the three
# anchor states: (theta, F_ad, F_protect, N).
TIME_SWEEP_THEORY = [
    (math.pi / 3, 0.8471786739945841, 0.9572056381780072, 0.08913427671553367),
    (math.pi / 2, 0.6432523984300952, 0.8538415782472955, 0.10439205466955838),
    (math.pi, 0.08208499862389884, 0.5476080885667329, 0.1349076105776078),
]
# Four-digit display anchors for the same quantities; the protected value for
# the polar state is printed high by ~2e-4 in its last digit, so the display
# comparison carries a 3e-4 tolerance while the frozen values above hold at 1e-8.
DISPLAY_ANCHORS = [(0.8472, 0.9572), (0.6433, 0.8538), (0.0821, 0.5478)]
DISPLAY_TOL = 3e-4

BLOCH_GRID = [
    (0.0, 0.0),
    (math.pi / 3, math.pi / 2),
    (0.4225 * math.pi, math.pi / 2),
    (math.pi / 2, 0.0),
    (math.pi / 2, math.pi / 2),
    (2 * math.pi / 3, math.pi / 4),
    (3 * math.pi / 4, 3 * math.pi / 2),
    (math.pi, 0.0),
]
WP_GRID = [0.1, 0.3, 0.5, 0.7, 0.9]
STRENGTHS = [0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99]


def _passed(name: str, detail: str = "") -> None:
    suffix = f"  ({detail})" if detail else ""
    print(f"[PASS] {name}{suffix}")


def test_duality_vs_analytic():
    """Circuit extraction = closed forms entrywise within 1e-10, N within 1e-10."""
    res_state = res_n = 0.0
    for theta, phi in BLOCH_GRID:
        rho0 = PureQubit(theta, phi).rho()
        for w in WP_GRID:
            for p in WP_GRID:
                wr = reversal_strength(w, p)
                sig = circuit.run_circuit(circuit.build_protection_circuit(w, p, wr), rho0)
                got, n_sim = circuit.extract_protected(sig)
                want, n_th = channels.rho_protect_analytic(rho0, w, p, wr)
                n1, n2, n_terms = channels.success_terms(rho0, w, p)
                mix = (n1 * rho0.mat + n2 * np.diag([1.0, 0.0])) / n_terms
                res_state = max(res_state, float(np.max(np.abs(got.mat - want.mat))),
                                float(np.max(np.abs(got.mat - mix))))
                res_n = max(res_n, abs(n_sim - n_th), abs(n_sim - n_terms))
    assert res_state <= 1e-10
    assert res_n <= 1e-10
    _passed("duality-vs-analytic", f"state residual {res_state:.2e}, N residual {res_n:.2e}")


def test_channel_correctness():
    """Damping branches equal the Kraus pair at 1e-12; completeness at 1e-12."""
    res_kraus = res_comp = 0.0
    for s in STRENGTHS:
        g = duality.build_gadget(duality.AD, s)
        e0, e1 = channels.ad_kraus(s)
        res_kraus = max(
            res_kraus,
            float(np.max(np.abs(duality.branch_operator(g, 0) - e0))),
            float(np.max(np.abs(duality.branch_operator(g, 1) - e1))),
        )
        for kind in duality.KINDS:
            res_comp = max(res_comp, duality.completeness_residual(
                duality.build_gadget(kind, s)))
    assert res_kraus <= 1e-12
    assert res_comp <= 1e-12
    _passed("channel-correctness", f"Kraus residual {res_kraus:.2e}, completeness {res_comp:.2e}")


def test_snd_vs_duality():
    """Dilation and gadget success branches agree at 1e-12; dilations are unitary."""
    res = 0.0
    probe_states = [PureQubit(th, ph).rho() for th, ph in BLOCH_GRID]
    for s in STRENGTHS:
        for rho0 in probe_states:
            for kind, op in ((duality.WM, channels.wm_operator),
                             (duality.MR, channels.mr_operator)):
                g0, _ = duality.run_gadget(rho0, duality.build_gadget(kind, s))
                d0, _ = dilation.run_dilated(rho0, op(s))
                res = max(res, float(np.max(np.abs(g0.mat - d0.mat))))
    assert res <= 1e-12

    rng = np.random.default_rng(4225)
    res_u = 0.0
    for _ in range(50):
        for dim in (2, 4):
            raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            k = raw / np.linalg.norm(raw, ord=2)
            dil = dilation.snd_unitary(k)
            res_u = max(
                res_u,
                float(np.max(np.abs(dil.u.conj().T @ dil.u - np.eye(2 * dim)))),
                float(np.max(np.abs(dil.u[:dim, :dim] - k))),
            )
    assert res_u <= 1e-12
    _passed("snd-vs-duality", f"branch residual {res:.2e}, dilation residual {res_u:.2e}")


def test_time_sweep_anchors():
    """Time-sweep anchors via both routes at 1e-8; protection beats damping."""
    for (theta, f_ad, f_prot, n_ref), (disp_ad, disp_prot) in zip(TIME_SWEEP_THEORY, DISPLAY_ANCHORS):
        rho0 = PureQubit(theta).rho()
        wr = reversal_strength(0.1, P_T5)

        rad = channels.rho_ad(rho0, P_T5)
        assert qmat.uhlmann_fidelity(rho0, rad) == pytest.approx(f_ad, abs=1e-8)
        prot, n_th = channels.rho_protect_analytic(rho0, 0.1, P_T5, wr)
        assert qmat.uhlmann_fidelity(rho0, prot) == pytest.approx(f_prot, abs=1e-8)
        assert n_th == pytest.approx(n_ref, abs=1e-8)

        sig = circuit.run_circuit(circuit.build_protection_circuit(0.1, P_T5, wr), rho0)
        got, n_sim = circuit.extract_protected(sig)
        assert qmat.uhlmann_fidelity(rho0, got) == pytest.approx(f_prot, abs=1e-8)
        assert n_sim == pytest.approx(n_ref, abs=1e-8)
        ad_only = circuit.run_circuit(circuit.build_protection_circuit(0.0, P_T5, 0.0), rho0)
        marg = qmat.partial_trace(ad_only, keep={circuit.WIRE_SYS}, wire_dims=[2, 2, 2, 2])
        assert qmat.uhlmann_fidelity(rho0, marg) == pytest.approx(f_ad, abs=1e-8)

        assert f_ad == pytest.approx(disp_ad, abs=DISPLAY_TOL)
        assert f_prot == pytest.approx(disp_prot, abs=DISPLAY_TOL)

    records = sweep_time(SweepConfig())
    assert all(r.F_protect_theory > r.F_ad_theory for r in records if r.p > 0)
    assert all(r.F_protect_sim > r.F_ad_sim for r in records if r.p > 0)
    assert max(r.max_residual for r in records) <= 1e-8
    _passed("time-sweep-anchors", "three states, both routes, protection strictly better")


def test_frontier_anchors():
    """Boundary-angle fidelity/success anchors and frontier solutions at 1e-3."""
    state = PureQubit(0.4225 * math.pi)
    f0 = channels.protect_fidelity_pure(state, 0.0, P_T1)
    _, _, n0 = channels.success_terms(state.rho(), 0.0, P_T1)
    assert f0 == pytest.approx(0.9507, abs=1e-3)
    assert n0 == pytest.approx(0.6971, abs=1e-3)

    assert minimal_wm_strength(0.4225 * math.pi, P_T1, 0.95) == 0.0
    w_eq = minimal_wm_strength(math.pi / 2, P_T1, 0.95)
    w_polar = minimal_wm_strength(math.pi, P_T1, 0.95)
    assert w_eq == pytest.approx(0.4353, abs=1e-3)
    assert w_polar == pytest.approx(0.8663, abs=1e-3)

    pts = frontier(SweepConfig(mode="frontier"))
    ws = [pt.w_star for pt in pts]
    ns = [pt.N for pt in pts]
    assert all(b >= a - 1e-12 for a, b in zip(ws, ws[1:]))
    assert all(b <= a + 1e-12 for a, b in zip(ns, ns[1:]))
    _passed("frontier-anchors",
            f"w*(pi/2) = {w_eq:.4f}, w*(pi) = {w_polar:.4f}, N(0.4225pi) = {n0:.4f}")


def test_protected_matrix_anchor():
    """Equatorial protected state entries at 1e-6 via both routes."""
    rho00 = 0.6461584217527045
    rho11 = 0.3538415782472955
    off = 0.3538415782472955

    wr = reversal_strength(0.1, P_T5)
    closed, _ = channels.rho_protect_analytic(PHI_2.rho(), 0.1, P_T5, wr)
    sig = circuit.run_circuit(circuit.build_protection_circuit(0.1, P_T5, wr), PHI_2.rho())
    extracted, _ = circuit.extract_protected(sig)
    for mat in (closed.mat, extracted.mat):
        assert np.real(mat[0, 0]) == pytest.approx(rho00, abs=1e-6)
        assert np.real(mat[1, 1]) == pytest.approx(rho11, abs=1e-6)
        assert abs(mat[0, 1]) == pytest.approx(off, abs=1e-6)
    assert rho00 == pytest.approx(0.6462, abs=1e-4)
    assert rho11 == pytest.approx(0.3538, abs=1e-4)
    _passed("protected-matrix-anchor", "diag (0.6462, 0.3538), |off-diag| 0.3538")


def test_readout_path():
    """Intensity reconstruction = direct extraction at 1e-8; physical repair works."""
    res = 0.0
    for theta, phi in BLOCH_GRID:
        rho0 = PureQubit(theta, phi).rho()
        for w in WP_GRID:
            for p in WP_GRID:
                wr = reversal_strength(w, p)
                sig = circuit.run_circuit(circuit.build_protection_circuit(w, p, wr), rho0)
                direct, _ = circuit.extract_protected(sig)
                rebuilt = circuit.readout_reconstruct(sig)
                res = max(res, float(np.max(np.abs(rebuilt.mat - direct.mat))))
    assert res <= 1e-8

    repaired = qmat.nearest_physical(np.diag([1.2, -0.2]))
    assert np.allclose(repaired.mat, np.diag([1.0, 0.0]), atol=1e-12)
    again = qmat.nearest_physical(repaired.mat)
    assert np.max(np.abs(again.mat - repaired.mat)) <= 1e-12
    _passed("readout-path", f"round-trip residual {res:.2e}")


def test_property_suites():
    """Trade-off monotonicity, recovery limit, damping fixed point, filter ordering."""
    w_line = [i / 21 for i in range(1, 21)]
    for theta, phi in BLOCH_GRID:
        state = PureQubit(theta, phi)
        if state.rho22 == 0.0:
            continue
        for p in WP_GRID:
            terms = [channels.success_terms(state.rho(), w, p) for w in w_line]
            ratios = [n2 / n1 for n1, n2, _ in terms]
            ns = [n for _, _, n in terms]
            fids = [channels.protect_fidelity_pure(state, w, p) for w in w_line]
            assert all(b < a for a, b in zip(ratios, ratios[1:]))
            assert all(b >= a - 1e-15 for a, b in zip(fids, fids[1:]))
            assert all(b < a for a, b in zip(ns, ns[1:]))
            assert channels.protect_fidelity_pure(state, 0.999, p) >= 1.0 - 1e-3

    ket0 = PureQubit(0.0).rho()
    for p in np.linspace(0.0, 1.0, 11):
        assert np.max(np.abs(channels.rho_ad(ket0, float(p)).mat - ket0.mat)) <= 1e-12

    for theta, phi in BLOCH_GRID:
        rho0 = PureQubit(theta, phi).rho()
        for w in WP_GRID:
            for p in WP_GRID:
                tr_wm = channels.apply_kraus(rho0, [channels.wm_operator(w)]).trace_value
                _, n = channels.rho_protect_analytic(
                    rho0, w, p, reversal_strength(w, p))
                assert n <= tr_wm + 1e-12
                assert tr_wm <= 1.0 + 1e-12
    _passed("property-suites", "monotone trade-off, recovery limit, fixed point, ordering")
