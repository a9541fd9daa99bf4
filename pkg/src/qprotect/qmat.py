"""Dense complex linear algebra for small qubit registers.

Operators are plain square ``numpy`` arrays of ``complex128`` ("CMatrix"
convention: square, finite entries, row-major). States are wrapped in
:class:`DensityState`, which caches the trace so normalized states and
unnormalized post-selection branches stay distinguishable.

Everything here is a pure function of its inputs; ``DensityState`` is frozen
and its matrix is marked read-only, so values are safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPSDError, RangeError

# Tolerances: rounding noise below these is repaired silently, anything
# worse is treated as a genuinely invalid input.
HERM_TOL = 1e-10
PSD_TOL = 1e-10
PSD_FAIL_TOL = 1e-8
TRACE_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
P0 = np.outer(KET0, KET0)  # |0><0|
P1 = np.outer(KET1, KET1)  # |1><1|


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


@dataclass(frozen=True)
class DensityState:
    """Density matrix together with its recorded trace.

    ``normalized`` is True for proper states (trace 1) and False for
    unnormalized branches left over after a non-trace-preserving filter,
    whose trace is the branch's success probability.
    """

    mat: np.ndarray
    trace_value: float
    normalized: bool

    @classmethod
    def from_matrix(cls, mat, normalized: bool | None = None, check: bool = True) -> "DensityState":
        """Build a state, validating Hermiticity, positivity and trace.

        If ``normalized`` is omitted it is inferred from the trace.
        """
        m = as_cmatrix(mat)
        tr = float(np.real(np.trace(m)))
        if normalized is None:
            normalized = abs(tr - 1.0) <= TRACE_TOL
        if check:
            _check_state(m, tr, normalized)
        m = m.copy()
        m.setflags(write=False)
        return cls(m, tr, normalized)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def _check_state(m: np.ndarray, tr: float, normalized: bool) -> None:
    if np.max(np.abs(m - m.conj().T)) > HERM_TOL:
        raise ValueError("density matrix is not Hermitian within tolerance")
    if np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)) < -PSD_TOL:
        raise NotPSDError("density matrix has a negative eigenvalue beyond tolerance")
    if normalized:
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"normalized state must have unit trace, got {tr}")
    elif not (-TRACE_TOL <= tr <= 1.0 + TRACE_TOL):
        raise ValueError(f"branch trace must lie in [0, 1], got {tr}")


def kron(a, b) -> np.ndarray:
    """Tensor product of two operators."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def kron_all(*ops) -> np.ndarray:
    """Tensor product of a sequence of operators, left factor most significant."""
    out = as_cmatrix(ops[0])
    for op in ops[1:]:
        out = np.kron(out, as_cmatrix(op))
    return out


def partial_trace(sigma: DensityState, keep, wire_dims) -> DensityState:
    """Trace out every wire not in ``keep``; trace is preserved exactly.

    ``keep`` may be empty, in which case the result is the 1x1 matrix
    holding the full trace. Kept wires stay in their original order.
    """
    dims = [int(d) for d in wire_dims]
    n = len(dims)
    keep = sorted(set(keep))
    for w in keep:
        if not 0 <= w < n:
            raise IndexError(f"wire {w} out of range for {n} wires")
    if int(np.prod(dims)) != sigma.dim:
        raise ValueError(f"wire_dims product {np.prod(dims)} != matrix dim {sigma.dim}")

    resh = sigma.mat.reshape(dims + dims)
    keep_set = set(keep)
    row_idx = list(range(n))
    col_idx = [n + i if i in keep_set else i for i in range(n)]
    out_idx = [i for i in keep] + [n + i for i in keep]
    red = np.einsum(resh, row_idx + col_idx, out_idx)
    d = int(np.prod([dims[i] for i in keep])) if keep else 1
    red = red.reshape(d, d)
    return DensityState.from_matrix(red, normalized=sigma.normalized)


def herm_sqrt(a) -> np.ndarray:
    """Hermitian PSD square root B with B @ B = a.

    Eigenvalues in [-1e-8, 0) are treated as rounding noise and clamped to
    zero; anything more negative raises :class:`NotPSDError`.
    """
    m = as_cmatrix(a)
    h = (m + m.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    if vals.min() < -PSD_FAIL_TOL:
        raise NotPSDError(f"matrix is not PSD: min eigenvalue {vals.min():.3e}")
    vals = np.clip(vals, 0.0, None)
    # rank-deficiency noise (~1e-16) must be zeroed, not rooted: sqrt would
    # amplify it to ~1e-8 and poison fidelities of pure states
    vals[vals < 1e-12 * vals.max()] = 0.0
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return (root + root.conj().T) / 2


def uhlmann_fidelity(rho: DensityState, sigma: DensityState) -> float:
    """Squared-overlap fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    The squared convention reduces to <phi|sigma|phi> for a pure reference
    state. Both arguments must be normalized.
    """
    if not (rho.normalized and sigma.normalized):
        raise RangeError("fidelity is defined between normalized states")
    rs = herm_sqrt(rho.mat)
    inner = herm_sqrt(rs @ sigma.mat @ rs)
    f = float(np.real(np.trace(inner))) ** 2
    return min(1.0, max(0.0, f))


def simplex_project(vals) -> np.ndarray:
    """Euclidean projection of a real vector onto the probability simplex."""
    v = np.asarray(vals, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    k = idx[u + (1.0 - css) / idx > 0][-1]
    tau = (1.0 - css[k - 1]) / k
    return np.maximum(v + tau, 0.0)


def nearest_physical(a) -> DensityState:
    """Closest normalized physical state to an arbitrary reconstruction.

    Hermitizes, then projects the eigenvalue vector onto the probability
    simplex and reassembles in the same eigenbasis. Idempotent on inputs
    that are already valid density matrices.
    """
    m = as_cmatrix(a)
    h = (m + m.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    lam = simplex_project(vals)
    out = (vecs * lam) @ vecs.conj().T
    out = (out + out.conj().T) / 2
    # renormalize away the ~1e-16 float error so the unit-trace check is exact
    out = out / np.real(np.trace(out))
    return DensityState.from_matrix(out, normalized=True)
