"""One-ancilla gadgets that realize the non-unitary filters as circuits.

Each Kraus operator is expanded over the unitaries {I, Z} (plus an X
correction for the decay branch of amplitude damping). An ancilla rotation V
prepares the expansion amplitudes, ancilla-controlled unitaries generate the
terms, a second rotation W recombines them, and the ancilla outcome labels
the branch: outcome m leaves the system in M_m rho M_m^dagger with

    M_m = sum_j W[m, j] * V[j, 0] * U_j.

V carries the magnitudes of the expansion coefficients; any sign lives in W
(negative b for measurement reversal). Strengths 0 and 1 are rejected here
because W contains a c/b division; callers wanting strength 0 bypass the
gadget with an identity block instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStrengthError
from .qmat import I2, P0, P1, X, Z, DensityState, kron

WM = "WM"
MR = "MR"
AD = "AD"
KINDS = (WM, MR, AD)


@dataclass(frozen=True)
class UESplit:
    """Coefficients of the two-term unitary expansion at a given strength.

    a^2 + b^2 = 1, a^2 - b^2 = sqrt(1 - alpha) and a*|b| = sqrt(alpha)/2 = c,
    so a^2 I +/- b^2 Z reproduces the diagonal filter of strength alpha.
    b carries the sign (negative for MR).
    """

    alpha: float
    a: float
    b: float
    c: float

    @property
    def b_sign(self) -> int:
        return -1 if self.b < 0 else 1


def ue_split(alpha: float, b_sign: int = 1) -> UESplit:
    """Expansion coefficients for a filter of strength ``alpha`` in (0, 1)."""
    if not 0.0 < alpha < 1.0:
        raise DegenerateStrengthError(
            f"strength must lie strictly in (0, 1), got {alpha}"
        )
    if b_sign not in (1, -1):
        raise ValueError(f"b_sign must be +1 or -1, got {b_sign}")
    root = math.sqrt(1.0 - alpha)
    a = math.sqrt((1.0 + root) / 2.0)
    b = b_sign * math.sqrt((1.0 - root) / 2.0)
    c = math.sqrt(alpha) / 2.0
    return UESplit(alpha=alpha, a=a, b=b, c=c)


@dataclass(frozen=True)
class DualityGadget:
    """The (V, W, {U_j}) bundle realizing one filter as a one-ancilla circuit.

    ``post_x`` appends an ancilla-controlled X on the system after W; the
    amplitude-damping block needs it so the failure branch actually decays
    |1> population to |0> rather than leaving it in place.
    """

    kind: str
    strength: float
    v: np.ndarray
    w_mat: np.ndarray
    post_x: bool
    unitaries: tuple = field(default=(I2, Z))


def build_gadget(kind: str, strength: float) -> DualityGadget:
    """Gadget whose success branch is the requested filter.

    WM -> branch 0 is diag(1, sqrt(1-w)); MR -> diag(sqrt(1-wr), 1);
    AD -> the two branches are the damping Kraus pair (E0, E1).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown gadget kind {kind!r}")
    split = ue_split(strength, b_sign=-1 if kind == MR else 1)
    a, b, c = split.a, split.b, split.c
    v = np.array([[a, -abs(b)], [abs(b), a]], dtype=complex)
    w_mat = np.array([[a, b], [c / a, -c / b]], dtype=complex)
    return DualityGadget(kind=kind, strength=strength, v=v, w_mat=w_mat, post_x=(kind == AD))


def branch_operator(g: DualityGadget, m: int) -> np.ndarray:
    """Effective operator M_m applied to the system when the ancilla reads m."""
    if m not in (0, 1):
        raise ValueError(f"branch index must be 0 or 1, got {m}")
    out = np.zeros((2, 2), dtype=complex)
    for j, u in enumerate(g.unitaries):
        out = out + g.w_mat[m, j] * g.v[j, 0] * u
    if g.post_x and m == 1:
        out = X @ out
    return out


def run_gadget(rho_sys: DensityState, g: DualityGadget) -> tuple[DensityState, DensityState]:
    """Run the gadget circuit and return the two unnormalized branch states.

    The register is ancilla (first factor) tensor system, ancilla starting
    in |0>. Gates: V on the ancilla, Z on the system controlled on ancilla
    |1>, W on the ancilla, then the optional controlled X. Projecting the
    ancilla onto |m> yields tau_m = M_m rho M_m^dagger, and the branch
    traces sum to 1.
    """
    if rho_sys.dim != 2 or not rho_sys.normalized:
        raise ValueError("gadget input must be a normalized single-qubit state")
    state = kron(P0, rho_sys.mat)

    def anc(u):
        return kron(u, I2)

    def controlled(u):
        return kron(P0, I2) + kron(P1, u)

    total = anc(g.w_mat) @ controlled(Z) @ anc(g.v)
    if g.post_x:
        total = controlled(X) @ total
    state = total @ state @ total.conj().T

    tau0 = DensityState.from_matrix(state[0:2, 0:2], normalized=False)
    tau1 = DensityState.from_matrix(state[2:4, 2:4], normalized=False)
    return tau0, tau1


def completeness_residual(g: DualityGadget) -> float:
    """Max deviation of sum_m M_m^dagger M_m from the identity."""
    acc = np.zeros((2, 2), dtype=complex)
    for m in (0, 1):
        mm = branch_operator(g, m)
        acc = acc + mm.conj().T @ mm
    return float(np.max(np.abs(acc - I2)))
