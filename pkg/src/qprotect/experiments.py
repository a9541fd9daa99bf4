"""Sweep harness: fidelity-vs-time curves, strength sweeps, the
fidelity/success-probability frontier, and the cross-check battery.

Every sweep record carries each quantity twice, once from the closed forms
and once from the simulated four-qubit circuit, so the CSV itself documents
the agreement between the two routes. Output ordering is deterministic:
records are generated on sorted grids and written with fixed formatting, so
identical configs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import channels, circuit, dilation, duality, qmat
from .channels import PureQubit, reversal_strength
from .errors import ConfigError, UnreachableError

SWEEP_COLUMNS = [
    "theta", "phi", "gamma", "t", "p", "w", "wr",
    "F_ad_theory", "F_ad_sim", "F_protect_theory", "F_protect_sim",
    "N_theory", "N_sim",
]
FRONTIER_COLUMNS = ["theta_over_pi", "w_star", "N", "F"]

# Deterministic 8-point Bloch grid used by the cross-implementation checks;
# includes the three states the sweeps are anchored on.
BLOCH_GRID = (
    (0.0, 0.0),
    (math.pi / 3, math.pi / 2),
    (0.4225 * math.pi, math.pi / 2),
    (math.pi / 2, 0.0),
    (math.pi / 2, math.pi / 2),
    (2 * math.pi / 3, math.pi / 4),
    (3 * math.pi / 4, 3 * math.pi / 2),
    (math.pi, 0.0),
)
WP_GRID = tuple(round(v, 3) for v in np.linspace(0.1, 0.9, 5))
STRENGTH_GRID = (0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)


def default_t_grid() -> list[float]:
    return [round(v, 10) for v in np.linspace(0.1, 5.0, 20)]


def default_w_grid() -> list[float]:
    # 20 equally spaced interior points of (0, 1)
    return [round(i / 21, 10) for i in range(1, 21)]


def default_theta_grid() -> list[float]:
    return [round(v, 12) for v in np.linspace(0.4225 * math.pi, 0.99 * math.pi, 24)]


@dataclass
class SweepConfig:
    """Inputs for one sweep run.

    Grids left as None take mode-dependent defaults: the time sweep scans
    t at fixed w = 0.1 over the three anchor states, the strength sweep
    scans w at fixed t = 1, and the frontier scans theta at t = 1.
    """

    mode: str = "time-sweep"
    gamma: float = 0.5
    t_list: list[float] | None = None
    w_list: list[float] | None = None
    theta_grid: list[float] | None = None
    phi: float = math.pi / 2
    target_fidelity: float = 0.95
    out: str | None = None

    def resolve(self) -> "SweepConfig":
        """Concrete copy with every grid filled in and validated."""
        if self.mode not in ("time-sweep", "w-sweep", "frontier", "verify"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        t_list = self.t_list
        if t_list is None:
            t_list = default_t_grid() if self.mode == "time-sweep" else [1.0]
        w_list = self.w_list
        if w_list is None:
            w_list = default_w_grid() if self.mode == "w-sweep" else [0.1]
        theta_grid = self.theta_grid
        if theta_grid is None:
            if self.mode == "frontier":
                theta_grid = default_theta_grid()
            else:
                theta_grid = [math.pi / 3, math.pi / 2, math.pi]
        cfg = SweepConfig(
            mode=self.mode, gamma=self.gamma, t_list=list(t_list),
            w_list=list(w_list), theta_grid=list(theta_grid), phi=self.phi,
            target_fidelity=self.target_fidelity, out=self.out,
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.mode not in ("time-sweep", "w-sweep", "frontier", "verify"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.gamma < 0:
            raise ConfigError(f"gamma must be non-negative, got {self.gamma}")
        for name, grid in (("t_list", self.t_list), ("w_list", self.w_list),
                           ("theta_grid", self.theta_grid)):
            if grid is not None and not grid:
                raise ConfigError(f"{name} must not be empty")
        if self.t_list and any(t < 0 for t in self.t_list):
            raise ConfigError("times must be non-negative")
        if self.w_list and any(not 0.0 <= w < 1.0 for w in self.w_list):
            raise ConfigError("WM strengths must lie in [0, 1)")
        if self.theta_grid and any(not 0.0 <= th <= math.pi for th in self.theta_grid):
            raise ConfigError("theta values must lie in [0, pi]")
        if not 0.0 < self.target_fidelity <= 1.0:
            raise ConfigError("target fidelity must lie in (0, 1]")


@dataclass(frozen=True)
class SweepRecord:
    """One sweep point: inputs, closed-form values, circuit values."""

    theta: float
    phi: float
    gamma: float
    t: float
    p: float
    w: float
    wr: float
    F_ad_theory: float
    F_ad_sim: float
    F_protect_theory: float
    F_protect_sim: float
    N_theory: float
    N_sim: float

    @property
    def max_residual(self) -> float:
        return max(
            abs(self.F_ad_theory - self.F_ad_sim),
            abs(self.F_protect_theory - self.F_protect_sim),
            abs(self.N_theory - self.N_sim),
        )


def _evaluate_point(theta: float, phi: float, gamma: float, t: float,
                    p: float, w: float) -> SweepRecord:
    wr = reversal_strength(w, p)
    rho0 = PureQubit(theta, phi).rho()

    rad = channels.rho_ad(rho0, p)
    f_ad_theory = qmat.uhlmann_fidelity(rho0, rad)
    rho_prot, n_theory = channels.rho_protect_analytic(rho0, w, p, wr)
    f_prot_theory = qmat.uhlmann_fidelity(rho0, rho_prot)

    ad_only = circuit.run_circuit(circuit.build_protection_circuit(0.0, p, 0.0), rho0)
    marginal = qmat.partial_trace(ad_only, keep={circuit.WIRE_SYS}, wire_dims=[2, 2, 2, 2])
    f_ad_sim = qmat.uhlmann_fidelity(rho0, marginal)

    full = circuit.run_circuit(circuit.build_protection_circuit(w, p, wr), rho0)
    rho_sim, n_sim = circuit.extract_protected(full)
    f_prot_sim = qmat.uhlmann_fidelity(rho0, rho_sim)

    return SweepRecord(
        theta=theta, phi=phi, gamma=gamma, t=t, p=p, w=w, wr=wr,
        F_ad_theory=f_ad_theory, F_ad_sim=f_ad_sim,
        F_protect_theory=f_prot_theory, F_protect_sim=f_prot_sim,
        N_theory=n_theory, N_sim=n_sim,
    )


def sweep_time(cfg: SweepConfig) -> list[SweepRecord]:
    """Fidelity curves over time at fixed WM strength (first w_list entry)."""
    if cfg.mode != "time-sweep":
        raise ConfigError(f"sweep_time called with mode {cfg.mode!r}")
    cfg = cfg.resolve()
    w = cfg.w_list[0]
    records = []
    for theta in sorted(cfg.theta_grid):
        for t in sorted(cfg.t_list):
            p = 1.0 - math.exp(-cfg.gamma * t)
            records.append(_evaluate_point(theta, cfg.phi, cfg.gamma, t, p, w))
    return records


def sweep_w(cfg: SweepConfig) -> list[SweepRecord]:
    """Fidelity and success probability over WM strength at fixed gamma, t."""
    if cfg.mode != "w-sweep":
        raise ConfigError(f"sweep_w called with mode {cfg.mode!r}")
    cfg = cfg.resolve()
    t = cfg.t_list[0]
    p = 1.0 - math.exp(-cfg.gamma * t)
    records = []
    for theta in sorted(cfg.theta_grid):
        for w in sorted(cfg.w_list):
            records.append(_evaluate_point(theta, cfg.phi, cfg.gamma, t, p, w))
    return records


@dataclass(frozen=True)
class FrontierPoint:
    theta_over_pi: float
    w_star: float
    N: float
    F: float


def minimal_wm_strength(theta: float, p: float, target: float,
                        tol: float = 1e-9) -> float:
    """Smallest WM strength reaching the target fidelity, by bisection.

    Valid because the protected fidelity is non-decreasing in w at fixed p.
    Returns 0 when the target is already met without protection; raises
    :class:`UnreachableError` when even w -> 1 cannot reach it.
    """
    state = PureQubit(theta)
    f = lambda w: channels.protect_fidelity_pure(state, w, p)
    if f(0.0) >= target:
        return 0.0
    hi = 1.0 - 1e-9
    if f(hi) < target:
        raise UnreachableError(
            f"target fidelity {target} unreachable at theta = {theta}"
        )
    lo = 0.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def frontier(cfg: SweepConfig) -> list[FrontierPoint]:
    """Minimal WM strength and its success-probability cost over theta."""
    if cfg.mode != "frontier":
        raise ConfigError(f"frontier called with mode {cfg.mode!r}")
    cfg = cfg.resolve()
    t = cfg.t_list[0]
    p = 1.0 - math.exp(-cfg.gamma * t)
    points = []
    for theta in sorted(cfg.theta_grid):
        w_star = minimal_wm_strength(theta, p, cfg.target_fidelity)
        state = PureQubit(theta)
        _, _, n = channels.success_terms(state.rho(), w_star, p)
        f = channels.protect_fidelity_pure(state, w_star, p)
        points.append(FrontierPoint(theta_over_pi=theta / math.pi, w_star=w_star, N=n, F=f))
    return points


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def sweep_csv(records: list[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for r in records:
        writer.writerow([_fmt(getattr(r, col)) for col in SWEEP_COLUMNS])
    return buf.getvalue()


def frontier_csv(points: list[FrontierPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FRONTIER_COLUMNS)
    for pt in points:
        writer.writerow([_fmt(getattr(pt, col)) for col in FRONTIER_COLUMNS])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Verification battery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}  (max residual {self.max_residual:.3e}, tol {self.tolerance:.0e})"


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def _check(name: str, residual: float, tol: float) -> CheckResult:
    return CheckResult(name=name, passed=residual <= tol, max_residual=residual, tolerance=tol)


def verify_all(
    strength_grid=STRENGTH_GRID,
    bloch_grid=BLOCH_GRID,
    wp_grid=WP_GRID,
    rng_seed: int = 1234,
    _gadget_builder=duality.build_gadget,
) -> VerificationReport:
    """Run every cross-implementation and property check at its tolerance.

    ``_gadget_builder`` exists for fault-injection tests: substituting a
    corrupted builder must make the completeness check fail.
    """
    strength_grid = tuple(strength_grid)
    bloch_grid = tuple(bloch_grid)
    wp_grid = tuple(wp_grid)
    if not strength_grid or not bloch_grid or not wp_grid:
        raise ConfigError("verification grids must not be empty")

    checks: list[CheckResult] = []
    states = [PureQubit(th, ph).rho() for th, ph in bloch_grid]

    # Kraus completeness of the damping pair over the closed [0, 1] grid.
    res = 0.0
    for p in np.linspace(0.0, 1.0, 11):
        e0, e1 = channels.ad_kraus(float(p))
        res = max(res, float(np.max(np.abs(
            e0.conj().T @ e0 + e1.conj().T @ e1 - np.eye(2)))))
    checks.append(_check("kraus_completeness", res, 1e-12))

    # Gadget rotations are unitary; branch operators are complete.
    res_u = res_c = 0.0
    for kind in duality.KINDS:
        for s in strength_grid:
            g = _gadget_builder(kind, s)
            res_u = max(
                res_u,
                float(np.max(np.abs(g.v.conj().T @ g.v - np.eye(2)))),
                float(np.max(np.abs(g.w_mat.conj().T @ g.w_mat - np.eye(2)))),
            )
            res_c = max(res_c, duality.completeness_residual(g))
    checks.append(_check("gadget_unitarity", res_u, 1e-12))
    checks.append(_check("branch_completeness", res_c, 1e-12))

    # Damping gadget branches reproduce the Kraus pair exactly.
    res = 0.0
    for s in strength_grid:
        g = _gadget_builder(duality.AD, s)
        e0, e1 = channels.ad_kraus(s)
        res = max(res, float(np.max(np.abs(duality.branch_operator(g, 0) - e0))),
                  float(np.max(np.abs(duality.branch_operator(g, 1) - e1))))
    checks.append(_check("ad_branches_equal_kraus", res, 1e-12))

    # Gadget output matches the closed-form channel on every state.
    res = 0.0
    res_trace = 0.0
    for s in strength_grid:
        for rho0 in states:
            t0, t1 = duality.run_gadget(rho0, _gadget_builder(duality.AD, s))
            rad = channels.rho_ad(rho0, s)
            res = max(res, float(np.max(np.abs(t0.mat + t1.mat - rad.mat))))
            for kind, op in ((duality.WM, channels.wm_operator),
                             (duality.MR, channels.mr_operator)):
                t0, _ = duality.run_gadget(rho0, _gadget_builder(kind, s))
                branch = channels.apply_kraus(rho0, [op(s)], normalize=False)
                res = max(res, float(np.max(np.abs(t0.mat - branch.mat))))
            # WM postselection probability is the filtered trace
            t0, _ = duality.run_gadget(rho0, _gadget_builder(duality.WM, s))
            expected = float(np.real(rho0.mat[0, 0] + (1 - s) * rho0.mat[1, 1]))
            res_trace = max(res_trace, abs(t0.trace_value - expected))
    checks.append(_check("gadget_channel_equivalence", res, 1e-12))
    checks.append(_check("wm_postselection_trace", res_trace, 1e-12))

    # Dilation and gadget are interchangeable on the success branch.
    res = 0.0
    for s in strength_grid:
        for rho0 in states:
            for kind, op in ((duality.WM, channels.wm_operator),
                             (duality.MR, channels.mr_operator)):
                g0, _ = duality.run_gadget(rho0, _gadget_builder(kind, s))
                d0, _ = dilation.run_dilated(rho0, op(s))
                res = max(res, float(np.max(np.abs(g0.mat - d0.mat))))
    checks.append(_check("dilation_vs_gadget", res, 1e-12))

    # Dilation unitarity and block recovery on random contractions.
    rng = np.random.default_rng(rng_seed)
    res = 0.0
    for _ in range(50):
        for n in (2, 4):
            raw = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            k = raw / np.linalg.norm(raw, ord=2)
            dil = dilation.snd_unitary(k)
            res = max(
                res,
                float(np.max(np.abs(dil.u.conj().T @ dil.u - np.eye(2 * n)))),
                float(np.max(np.abs(dil.u[:n, :n] - k))),
            )
    checks.append(_check("dilation_unitarity_block_recovery", res, 1e-12))

    # Two-gate decompositions hit the dilation success block up to phase.
    res = 0.0
    for kind in (duality.WM, duality.MR):
        for s in np.linspace(0.05, 0.95, 10):
            _, report = dilation.gate_sequence(kind, float(s))
            res = max(res, report.max_residual)
    checks.append(_check("gate_sequence_success_block", res, 1e-10))

    # Full circuit against the closed forms, and the readout round trip.
    res_state = res_n = res_read = 0.0
    for th, ph in bloch_grid:
        rho0 = PureQubit(th, ph).rho()
        for w in wp_grid:
            for p in wp_grid:
                wr = reversal_strength(w, p)
                sig = circuit.run_circuit(circuit.build_protection_circuit(w, p, wr), rho0)
                got, n_sim = circuit.extract_protected(sig)
                want, n_th = channels.rho_protect_analytic(rho0, w, p, wr)
                res_state = max(res_state, float(np.max(np.abs(got.mat - want.mat))))
                res_n = max(res_n, abs(n_sim - n_th))
                redone = circuit.readout_reconstruct(sig)
                res_read = max(res_read, float(np.max(np.abs(redone.mat - got.mat))))
    checks.append(_check("circuit_vs_analytic_state", res_state, 1e-10))
    checks.append(_check("circuit_vs_analytic_N", res_n, 1e-10))
    checks.append(_check("readout_vs_extraction", res_read, 1e-8))

    # Trade-off monotonicity and the recovery limit.
    ok = True
    w_line = [i / 21 for i in range(1, 21)]
    for th, ph in bloch_grid:
        state = PureQubit(th, ph)
        if state.rho22 <= 0.0:
            continue
        for p in wp_grid:
            ratios = [channels.success_terms(state.rho(), w, p)[1]
                      / channels.success_terms(state.rho(), w, p)[0] for w in w_line]
            fids = [channels.protect_fidelity_pure(state, w, p) for w in w_line]
            ns = [channels.success_terms(state.rho(), w, p)[2] for w in w_line]
            ok = ok and all(r2 < r1 for r1, r2 in zip(ratios, ratios[1:]))
            ok = ok and all(f2 >= f1 - 1e-15 for f1, f2 in zip(fids, fids[1:]))
            ok = ok and all(n2 < n1 for n1, n2 in zip(ns, ns[1:]))
    checks.append(_check("tradeoff_monotonicity", 0.0 if ok else 1.0, 0.5))

    res = 0.0
    for th, ph in bloch_grid:
        for p in wp_grid:
            f = channels.protect_fidelity_pure(PureQubit(th, ph), 0.999, p)
            res = max(res, max(0.0, 1.0 - f))
    checks.append(_check("recovery_limit_w_to_1", res, 1e-3))

    # |0><0| is a fixed point of damping; filter ordering N <= tr(wm) <= 1.
    ket0 = PureQubit(0.0).rho()
    res = 0.0
    for p in np.linspace(0.0, 1.0, 11):
        res = max(res, float(np.max(np.abs(channels.rho_ad(ket0, float(p)).mat - ket0.mat))))
    checks.append(_check("ad_fixed_point", res, 1e-12))

    ok = True
    for th, ph in bloch_grid:
        rho0 = PureQubit(th, ph).rho()
        for w in wp_grid:
            for p in wp_grid:
                wr = reversal_strength(w, p)
                tr_wm = channels.apply_kraus(rho0, [channels.wm_operator(w)]).trace_value
                _, n = channels.rho_protect_analytic(rho0, w, p, wr)
                ok = ok and (n <= tr_wm + 1e-12) and (tr_wm <= 1.0 + 1e-12)
    checks.append(_check("filter_ordering", 0.0 if ok else 1.0, 0.5))

    return VerificationReport(checks=tuple(checks))
