"""Four-qubit protection pipeline: WM, damping and MR blocks on one register.

Wire order is fixed as (C1, C2, C3, C4) with C1 most significant, so a basis
index reads 8*b1 + 4*b2 + 2*b3 + b4. C3 carries the system state; C2, C4 and
C1 are the ancillas of the WM, damping and MR blocks respectively. With that
ordering the protected qubit lives in the first four rows and columns of the
16x16 register state (C1 = C2 = 0, C4 summed over), which is what
``extract_protected`` reads off.

``readout_reconstruct`` rebuilds the same 2x2 state the way an ensemble
measurement would: three y-pulse settings turn populations into observable
single-quantum coherences, peak intensities are emulated as the real parts of
those coherences, and the diagonal entries are recovered from three intensity
sums. Independently measured entries need not form a physical matrix, so the
result is repaired with the simplex projection before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import duality
from .errors import DegenerateStrengthError, RangeError, ZeroTraceError
from .qmat import I2, P0, P1, X, Z, DensityState, kron_all, nearest_physical

N_WIRES = 4
WIRE_MR, WIRE_WM, WIRE_SYS, WIRE_AD = 0, 1, 2, 3

_MIN_TRACE = 1e-12
_UNITARY_TOL = 1e-12

# Ideal pi/2 y-pulse used by the tomographic settings.
RY90 = np.array(
    [[math.cos(math.pi / 4), -math.sin(math.pi / 4)],
     [math.sin(math.pi / 4), math.cos(math.pi / 4)]],
    dtype=complex,
)


@dataclass(frozen=True)
class GateOp:
    """Single-qubit gate, optionally controlled by another wire.

    ``control`` is (wire, state): the unitary fires when the control wire
    is in that basis state.
    """

    unitary: np.ndarray
    target: int
    control: tuple[int, int] | None = None

    def __post_init__(self):
        u = self.unitary
        if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > _UNITARY_TOL:
            raise ValueError("gate operator is not unitary within tolerance")
        wires = {self.target}
        if self.control is not None:
            wires.add(self.control[0])
        if len(wires) < (2 if self.control else 1):
            raise ValueError("control and target wires must be distinct")
        for w in wires:
            if not 0 <= w < N_WIRES:
                raise ValueError(f"wire {w} out of range")

    def full_matrix(self) -> np.ndarray:
        """Embed into the 16x16 register."""
        if self.control is None:
            ops = [I2] * N_WIRES
            ops[self.target] = self.unitary
            return kron_all(*ops)
        cwire, state = self.control
        on, off = (P1, P0) if state == 1 else (P0, P1)
        ops_off = [I2] * N_WIRES
        ops_off[cwire] = off
        ops_on = [I2] * N_WIRES
        ops_on[cwire] = on
        ops_on[self.target] = self.unitary
        return kron_all(*ops_off) + kron_all(*ops_on)


@dataclass(frozen=True)
class ProtectionCircuit:
    gates: tuple[GateOp, ...]
    w: float
    p: float
    wr: float


def _gadget_gates(kind: str, strength: float, ancilla: int) -> list[GateOp]:
    g = duality.build_gadget(kind, strength)
    gates = [
        GateOp(unitary=g.v, target=ancilla),
        GateOp(unitary=Z, target=WIRE_SYS, control=(ancilla, 1)),
        GateOp(unitary=g.w_mat, target=ancilla),
    ]
    if g.post_x:
        gates.append(GateOp(unitary=X, target=WIRE_SYS, control=(ancilla, 1)))
    return gates


def build_protection_circuit(w: float, p: float, wr: float) -> ProtectionCircuit:
    """Gate list for the WM, damping, MR blocks in that order.

    A strength of exactly 0 skips its block (identity bypass) so sweeps can
    include the unprotected endpoints; strength 1 is rejected.
    """
    for name, val in (("w", w), ("p", p), ("wr", wr)):
        if val >= 1.0:
            raise DegenerateStrengthError(f"{name} = {val}: strength 1 is not representable")
        if val < 0.0:
            raise RangeError(f"{name} must be non-negative, got {val}")
    gates: list[GateOp] = []
    if w > 0.0:
        gates += _gadget_gates(duality.WM, w, WIRE_WM)
    if p > 0.0:
        gates += _gadget_gates(duality.AD, p, WIRE_AD)
    if wr > 0.0:
        gates += _gadget_gates(duality.MR, wr, WIRE_MR)
    return ProtectionCircuit(gates=tuple(gates), w=w, p=p, wr=wr)


def run_circuit(c: ProtectionCircuit, rho_sys: DensityState) -> DensityState:
    """Propagate |0><0| x |0><0| x rho x |0><0| through the circuit."""
    if rho_sys.dim != 2 or not rho_sys.normalized:
        raise ValueError("circuit input must be a normalized single-qubit state")
    state = kron_all(P0, P0, rho_sys.mat, P0)
    for gate in c.gates:
        u = gate.full_matrix()
        state = u @ state @ u.conj().T
    return DensityState.from_matrix(state, normalized=True)


def extract_protected(sigma: DensityState) -> tuple[DensityState, float]:
    """Protected qubit and success probability from the register state.

    Sums out the damping ancilla and postselects the WM/MR ancillas on |0>,
    which reduces to reading the first four rows and columns of sigma.
    """
    if sigma.dim != 16:
        raise ValueError("expected the 16x16 register state")
    m = sigma.mat
    d1 = np.real(m[0, 0] + m[1, 1])
    d2 = np.real(m[2, 2] + m[3, 3])
    off = m[0, 2] + m[1, 3]
    n = float(d1 + d2)
    if n < _MIN_TRACE:
        raise ZeroTraceError(f"no population in the protected subspace (N = {n:.3e})")
    out = np.array([[d1, off], [np.conj(off), d2]], dtype=complex) / n
    return DensityState.from_matrix(out, normalized=True), n


def tomo_settings(
    sigma: DensityState,
) -> tuple[DensityState, DensityState, DensityState]:
    """Register state under the three tomographic pulse settings.

    Setting k applies an ideal pi/2 y-rotation to wire k (C1, C2, C3) and
    leaves the other wires alone, turning wire-k population differences
    into observable coherences.
    """
    if sigma.dim != 16:
        raise ValueError("expected the 16x16 register state")
    out = []
    for wire in (WIRE_MR, WIRE_WM, WIRE_SYS):
        ops = [I2] * N_WIRES
        ops[wire] = RY90
        r = kron_all(*ops)
        # check=False: rotations preserve whatever noise the input carried,
        # and the readout path must tolerate slightly unphysical inputs
        out.append(
            DensityState.from_matrix(
                r @ sigma.mat @ r.conj().T, normalized=sigma.normalized, check=False
            )
        )
    return tuple(out)


def _coherence(sig: np.ndarray, wire: int, spectators: tuple[int, ...]) -> float:
    """Emulated absorption-mode line intensity of one peak of one qubit.

    The peak of ``wire`` labelled by the spectator bit pattern maps to the
    single-quantum coherence between the two basis states that differ only
    in that wire's bit; its real part is the intensity. Calibration is
    fixed by |0000><0000|, whose only bright peak has intensity 1/2.
    """
    others = [q for q in range(N_WIRES) if q != wire]
    i0 = 0
    for q, bit in zip(others, spectators):
        i0 += bit << (N_WIRES - 1 - q)
    i1 = i0 | (1 << (N_WIRES - 1 - wire))
    return float(np.real(sig[i0, i1]))


def readout_reconstruct(sigma: DensityState) -> DensityState:
    """Protected qubit rebuilt from emulated spectral intensities.

    Diagonals come from three intensity sums (all eight peaks of C1, the
    C1 = 0 half of C2's peaks, and the two C1 = C2 = 0 peaks of C3);
    off-diagonals are read directly from the unrotated state. The entries
    are measured independently, so the assembled matrix is projected back
    onto the physical set before being returned.
    """
    sig1, sig2, sig3 = tomo_settings(sigma)

    alpha = sum(
        _coherence(sig1.mat, WIRE_MR, (b2, b3, b4))
        for b2 in (0, 1) for b3 in (0, 1) for b4 in (0, 1)
    )
    beta = sum(
        _coherence(sig2.mat, WIRE_WM, (0, b3, b4))
        for b3 in (0, 1) for b4 in (0, 1)
    )
    gamma = (
        _coherence(sig3.mat, WIRE_SYS, (0, 0, 0))
        + _coherence(sig3.mat, WIRE_SYS, (0, 0, 1))
    )

    d1 = (1 + 2 * alpha + 4 * beta + 8 * gamma) / 8
    d2 = (1 + 2 * alpha + 4 * beta - 8 * gamma) / 8
    off = sigma.mat[0, 2] + sigma.mat[1, 3]

    n = d1 + d2
    if n < _MIN_TRACE:
        raise ZeroTraceError(f"no intensity in the protected subspace (N = {n:.3e})")
    raw = np.array([[d1, off], [np.conj(off), d2]], dtype=complex) / n
    return nearest_physical(raw)
