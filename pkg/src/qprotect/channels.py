"""Closed-form single-qubit channel models.

Kraus pairs for amplitude damping, the weak-measurement (WM) and
measurement-reversal (MR) filter operators, and the analytic output of the
full WM -> damping -> MR protection chain, including the success-probability
bookkeeping N = N1 + N2.

Conventions: the damping strength is p = 1 - exp(-gamma * t); WM partially
projects toward |0>, MR partially projects toward |1>; the reversal strength
matched to (w, p) is wr = w + p * (1 - w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeError, ZeroTraceError
from .qmat import DensityState, as_cmatrix

_MIN_TRACE = 1e-12


@dataclass(frozen=True)
class DampingParams:
    """Amplitude-damping strength, optionally derived from a rate and a time."""

    p: float
    gamma: float | None = None
    t: float | None = None

    @classmethod
    def from_rate_time(cls, gamma: float, t: float) -> "DampingParams":
        if gamma < 0 or t < 0:
            raise RangeError("gamma and t must be non-negative")
        return cls(p=1.0 - math.exp(-gamma * t), gamma=gamma, t=t)

    @classmethod
    def from_strength(cls, p: float) -> "DampingParams":
        if not 0.0 <= p <= 1.0:
            raise RangeError(f"damping strength p must be in [0, 1], got {p}")
        return cls(p=p)


@dataclass(frozen=True)
class Strengths:
    """WM and MR strengths; the endpoint 1 is rejected (filter becomes a projector)."""

    w: float
    wr: float

    def __post_init__(self):
        if not 0.0 <= self.w < 1.0:
            raise RangeError(f"WM strength w must be in [0, 1), got {self.w}")
        if not 0.0 <= self.wr < 1.0:
            raise RangeError(f"MR strength wr must be in [0, 1), got {self.wr}")


@dataclass(frozen=True)
class PureQubit:
    """Pure state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""

    theta: float
    phi: float = math.pi / 2

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise RangeError(f"theta must be in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", self.phi % (2 * math.pi))

    def ket(self) -> np.ndarray:
        return np.array(
            [math.cos(self.theta / 2), np.exp(1j * self.phi) * math.sin(self.theta / 2)],
            dtype=complex,
        )

    def rho(self) -> DensityState:
        v = self.ket()
        return DensityState.from_matrix(np.outer(v, v.conj()), normalized=True)

    @property
    def rho22(self) -> float:
        """Excited-state population sin^2(theta/2), the part damping acts on."""
        return math.sin(self.theta / 2) ** 2


# The three input states used throughout the sweeps (phi = pi/2 throughout).
PHI_1 = PureQubit(math.pi / 3)
PHI_2 = PureQubit(math.pi / 2)
PHI_3 = PureQubit(math.pi)


def ad_kraus(p: float) -> tuple[np.ndarray, np.ndarray]:
    """Kraus pair (E0, E1) of the amplitude-damping channel of strength p."""
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"damping strength p must be in [0, 1], got {p}")
    e0 = np.array([[1, 0], [0, math.sqrt(1 - p)]], dtype=complex)
    e1 = np.array([[0, math.sqrt(p)], [0, 0]], dtype=complex)
    return e0, e1


def wm_operator(w: float) -> np.ndarray:
    """Weak-measurement filter diag(1, sqrt(1-w)), a contraction toward |0>."""
    if not 0.0 <= w < 1.0:
        raise RangeError(f"WM strength w must be in [0, 1), got {w}")
    return np.array([[1, 0], [0, math.sqrt(1 - w)]], dtype=complex)


def mr_operator(wr: float) -> np.ndarray:
    """Measurement-reversal filter diag(sqrt(1-wr), 1), a contraction toward |1>."""
    if not 0.0 <= wr < 1.0:
        raise RangeError(f"MR strength wr must be in [0, 1), got {wr}")
    return np.array([[math.sqrt(1 - wr), 0], [0, 1]], dtype=complex)


def reversal_strength(w: float, p: float) -> float:
    """MR strength matched to (w, p): wr = w + p(1-w), i.e. 1-wr = (1-w)(1-p)."""
    if not 0.0 <= w < 1.0:
        raise RangeError(f"WM strength w must be in [0, 1), got {w}")
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"damping strength p must be in [0, 1], got {p}")
    return w + p * (1.0 - w)


def apply_kraus(rho: DensityState, ks, normalize: bool = False) -> DensityState:
    """Operator-sum action sum_K K rho K^dagger.

    With ``normalize`` the result is divided by its trace (raising
    :class:`ZeroTraceError` on a vanishing branch); otherwise the trace is
    recorded as the branch probability.
    """
    out = np.zeros_like(rho.mat)
    for k in ks:
        km = as_cmatrix(k)
        if km.shape != rho.mat.shape:
            raise ValueError("Kraus operator dimension does not match the state")
        out = out + km @ rho.mat @ km.conj().T
    tr = float(np.real(np.trace(out)))
    if normalize:
        if tr < _MIN_TRACE:
            raise ZeroTraceError(f"cannot normalize branch with trace {tr:.3e}")
        return DensityState.from_matrix(out / tr, normalized=True)
    return DensityState.from_matrix(out, normalized=False)


def rho_ad(rho0: DensityState, p: float) -> DensityState:
    """Damped state in closed form.

    Populations relax toward |0> at rate p, coherences shrink by
    sqrt(1-p); agrees with the Kraus pipeline entrywise.
    """
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"damping strength p must be in [0, 1], got {p}")
    r = rho0.mat
    out = np.array(
        [
            [p + (1 - p) * r[0, 0], math.sqrt(1 - p) * r[0, 1]],
            [math.sqrt(1 - p) * r[1, 0], (1 - p) * r[1, 1]],
        ],
        dtype=complex,
    )
    return DensityState.from_matrix(out, normalized=True)


def rho_protect_analytic(
    rho0: DensityState, w: float, p: float, wr: float
) -> tuple[DensityState, float]:
    """Normalized output of the WM -> damping -> MR chain and its trace N.

    N is the success probability: the retained fraction of the ensemble
    after both filters.
    """
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"damping strength p must be in [0, 1], got {p}")
    Strengths(w, wr)
    r = rho0.mat
    s11 = (1 - wr) * (r[0, 0] + p * (1 - w) * r[1, 1])
    s12 = math.sqrt((1 - w) * (1 - p) * (1 - wr)) * r[0, 1]
    s22 = (1 - w) * (1 - p) * r[1, 1]
    sigma = np.array([[s11, s12], [np.conj(s12), s22]], dtype=complex)
    n = float(np.real(s11 + s22))
    if n < _MIN_TRACE:
        raise ZeroTraceError(f"protected branch has vanishing trace {n:.3e}")
    return DensityState.from_matrix(sigma / n, normalized=True), n


def success_terms(rho0: DensityState, w: float, p: float) -> tuple[float, float, float]:
    """(N1, N2, N) for the matched-reversal chain, wr = w + p(1-w).

    The protected state decomposes as (N1 rho0 + N2 |0><0|) / N, so N1 is
    the faithful part, N2 the residual damping toward |0>, and N = N1 + N2
    the success probability.
    """
    if not 0.0 <= w < 1.0:
        raise RangeError(f"WM strength w must be in [0, 1), got {w}")
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"damping strength p must be in [0, 1], got {p}")
    rho22 = float(np.real(rho0.mat[1, 1]))
    n1 = (1 - p) * (1 - w)
    n2 = rho22 * (1 - w) ** 2 * p * (1 - p)
    return n1, n2, n1 + n2


def protect_fidelity_pure(state: PureQubit, w: float, p: float) -> float:
    """Fidelity of the matched-reversal protected state with the pure input.

    Equals (N1 + N2 cos^2(theta/2)) / (N1 + N2); independent of phi.
    """
    n1, n2, n = success_terms(state.rho(), w, p)
    c2 = math.cos(state.theta / 2) ** 2
    return (n1 + n2 * c2) / n


def reversal_scan(
    state: PureQubit, w: float, p: float, num: int = 101
) -> list[tuple[float, float]]:
    """Diagnostic curve: output fidelity as the MR strength varies freely.

    The matched rule wr = w + p(1-w) is deliberately not asserted to
    maximize this curve; depending on the input state the renormalized
    fidelity can keep rising well past it (at the cost of success
    probability). The scan exposes the actual dependence for inspection.
    """
    if num < 2:
        raise RangeError("scan needs at least two points")
    rho0 = state.rho()
    ket = state.ket()
    out = []
    for wr in np.linspace(0.0, 1.0 - 1e-9, num):
        prot, _ = rho_protect_analytic(rho0, w, p, float(wr))
        out.append((float(wr), float(np.real(ket.conj() @ prot.mat @ ket))))
    return out
