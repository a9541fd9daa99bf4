"""Block-unitary embedding of contractions, the alternative to the gadget path.

Any operator K with spectral norm <= 1 embeds in the doubled space as

    U = [[K,               sqrt(I - K K+)],
         [sqrt(I - K+ K),  -K+           ]]

with the ancilla indexing the block: postselecting the ancilla on |0> applies
K to the system. For the WM and MR filters the 4x4 embedding collapses to a
two-gate sequence, a z rotation plus one controlled y rotation, which
``gate_sequence`` constructs and verifies against the block matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStrengthError, NotContractionError, RangeError
from .qmat import I2, P0, P1, DensityState, herm_sqrt, kron

CONTRACTION_TOL = 1e-8


@dataclass(frozen=True)
class DilationUnitary:
    """Unitary of dimension 2n whose top-left n x n block is the source contraction."""

    u: np.ndarray
    k_dim: int


def snd_unitary(k) -> DilationUnitary:
    """Unitary dilation of a contraction; ancilla |0> block applies K."""
    km = np.asarray(k, dtype=complex)
    n = km.shape[0]
    smax = float(np.linalg.norm(km, ord=2))
    if smax > 1.0 + CONTRACTION_TOL:
        raise NotContractionError(f"largest singular value {smax} exceeds 1")
    eye = np.eye(n, dtype=complex)
    top_defect = herm_sqrt(eye - km @ km.conj().T)
    bot_defect = herm_sqrt(eye - km.conj().T @ km)
    u = np.block([[km, top_defect], [bot_defect, -km.conj().T]])
    return DilationUnitary(u=u, k_dim=n)


def run_dilated(rho_sys: DensityState, k) -> tuple[DensityState, DensityState]:
    """Apply the dilation to ancilla |0> tensor rho and split by ancilla outcome.

    Branch 0 is K rho K^dagger, branch 1 the defect branch; their traces
    sum to 1.
    """
    if not rho_sys.normalized:
        raise ValueError("dilation input must be a normalized state")
    dil = snd_unitary(k)
    n = dil.k_dim
    if rho_sys.dim != n:
        raise ValueError(f"state dim {rho_sys.dim} does not match contraction dim {n}")
    anc0 = np.zeros((2, 2), dtype=complex)
    anc0[0, 0] = 1.0
    state = dil.u @ kron(anc0, rho_sys.mat) @ dil.u.conj().T
    tau0 = DensityState.from_matrix(state[:n, :n], normalized=False)
    tau1 = DensityState.from_matrix(state[n:, n:], normalized=False)
    return tau0, tau1


@dataclass(frozen=True)
class GateSpec:
    """One gate of a dilation sequence; angles in radians.

    ``control`` is (wire, state) for controlled gates, None otherwise;
    wires are named "ancilla" / "system".
    """

    name: str
    wire: str
    angle: float
    control: tuple[str, int] | None = None


@dataclass(frozen=True)
class GateVerification:
    """Outcome of checking a gate sequence against the block dilation.

    Equality is required only on the ancilla-|0> success block, up to one
    global phase; failure-block phases are unobservable after postselection.
    ``placement`` records which wire assignment satisfied the contract.
    """

    gates: tuple[GateSpec, ...]
    product: np.ndarray
    dilation: np.ndarray
    placement: str
    phase: complex
    max_residual: float
    ok: bool


def _rz(phi: float) -> np.ndarray:
    return np.array([[np.exp(-1j * phi / 2), 0], [0, np.exp(1j * phi / 2)]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    # y rotation convention: Y(theta) = exp(-i theta Y / 2)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _embed(u: np.ndarray, wire: str) -> np.ndarray:
    # register ordering: ancilla is the first tensor factor
    return kron(u, I2) if wire == "ancilla" else kron(I2, u)


def _controlled(u: np.ndarray, control_wire: str, state: int, target_wire: str) -> np.ndarray:
    proj_on = P1 if state == 1 else P0
    proj_off = P0 if state == 1 else P1
    if control_wire == "ancilla":
        return kron(proj_off, I2) + kron(proj_on, u)
    return kron(I2, proj_off) + kron(u, proj_on)


def _success_block_match(product: np.ndarray, target: np.ndarray) -> tuple[complex, float]:
    block = product[:2, :2]
    i, j = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    phase = block[i, j] / target[i, j]
    mag = abs(phase)
    if mag < 1e-12:
        return 1.0 + 0j, float(np.max(np.abs(block - target)))
    phase = phase / mag
    return phase, float(np.max(np.abs(block - phase * target)))


def gate_sequence(kind: str, strength: float) -> tuple[list[GateSpec], GateVerification]:
    """Two-gate realization of the WM or MR dilation, with verification.

    WM: z(pi/2) then Y(2*asin(sqrt(w))) on the ancilla controlled on the
    system being |1>. MR: same with angle from wr and control state |0>.
    Both wire placements of the z rotation and the controlled rotation are
    tried; the report records the one whose ancilla-|0> block reproduces
    the filter up to a global phase.
    """
    if kind not in ("WM", "MR"):
        raise ValueError(f"gate sequences exist for WM and MR only, got {kind!r}")
    if strength < 0.0:
        raise RangeError(f"strength must be non-negative, got {strength}")
    if strength >= 1.0:
        raise DegenerateStrengthError("strength 1 turns the filter into a projector")

    theta = math.asin(math.sqrt(strength))
    control_state = 1 if kind == "WM" else 0
    if kind == "WM":
        filt = np.array([[1, 0], [0, math.sqrt(1 - strength)]], dtype=complex)
    else:
        filt = np.array([[math.sqrt(1 - strength), 0], [0, 1]], dtype=complex)
    dil = snd_unitary(filt).u

    placements = [
        ("z on ancilla, system-controlled y on ancilla", "ancilla", "system", "ancilla"),
        ("z on system, ancilla-controlled y on system", "system", "ancilla", "system"),
    ]
    best = None
    for label, z_wire, c_wire, t_wire in placements:
        gates = (
            GateSpec(name="RZ", wire=z_wire, angle=math.pi / 2),
            GateSpec(name="CRY", wire=t_wire, angle=2 * theta, control=(c_wire, control_state)),
        )
        product = _embed(_rz(math.pi / 2), z_wire) @ _controlled(
            _ry(2 * theta), c_wire, control_state, t_wire
        )
        phase, residual = _success_block_match(product, filt)
        report = GateVerification(
            gates=gates,
            product=product,
            dilation=dil,
            placement=label,
            phase=phase,
            max_residual=residual,
            ok=residual <= 1e-10,
        )
        if best is None or report.max_residual < best.max_residual:
            best = report
        if report.ok:
            break
    return list(best.gates), best
