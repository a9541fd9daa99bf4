import itertools

import numpy as np
import pytest

from qprotect.qmat import DensityState


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_density(rng, dim) -> DensityState:
    """Random full-rank normalized state (Wishart construction)."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return DensityState.from_matrix(m / np.real(np.trace(m)), normalized=True)


def random_psd(rng, dim, scale=1.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return scale * m / np.real(np.trace(m))


def kron_oracle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise tensor-product definition, independent of numpy.kron."""
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for ia, ja, ib, jb in itertools.product(range(n), range(n), range(m), range(m)):
        out[ia * m + ib, ja * m + jb] = a[ia, ja] * b[ib, jb]
    return out


def ptrace_oracle(mat: np.ndarray, keep, dims) -> np.ndarray:
    """Partial trace by direct summation over computational basis labels."""
    n = len(dims)
    keep = sorted(keep)
    traced = [i for i in range(n) if i not in keep]
    kept_dims = [dims[i] for i in keep]
    out_dim = int(np.prod(kept_dims)) if keep else 1
    out = np.zeros((out_dim, out_dim), dtype=complex)

    def flat(bits):
        idx = 0
        for i in range(n):
            idx = idx * dims[i] + bits[i]
        return idx

    kept_ranges = [range(dims[i]) for i in keep]
    traced_ranges = [range(dims[i]) for i in traced]
    for row_bits in itertools.product(*kept_ranges) if keep else [()]:
        for col_bits in itertools.product(*kept_ranges) if keep else [()]:
            acc = 0.0 + 0.0j
            for tr_bits in itertools.product(*traced_ranges) if traced else [()]:
                rb = [0] * n
                cb = [0] * n
                for i, v in zip(keep, row_bits):
                    rb[i] = v
                for i, v in zip(keep, col_bits):
                    cb[i] = v
                for i, v in zip(traced, tr_bits):
                    rb[i] = v
                    cb[i] = v
                acc += mat[flat(rb), flat(cb)]
            fr = fc = 0
            for d, v in zip(kept_dims, row_bits):
                fr = fr * d + v
            for d, v in zip(kept_dims, col_bits):
                fc = fc * d + v
            out[fr, fc] = acc
    return out
