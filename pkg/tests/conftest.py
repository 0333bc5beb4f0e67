"""Shared fixtures and independent brute-force oracles.

The oracle helpers here deliberately avoid the package's vectorized code
paths: Pauli expectations go through explicit np.kron products, partial
traces through index loops, so expected values are computed by a route the
implementation under test never touches.
"""

import numpy as np
import pytest

S0 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = [S0, SX, SY, SZ]


def kron3(i, j, k):
    return np.kron(np.kron(SIGMA[i], SIGMA[j]), SIGMA[k])


def oracle_theta3(rho):
    t = np.zeros((4, 4, 4))
    for i in range(4):
        for j in range(4):
            for k in range(4):
                t[i, j, k] = np.trace(rho @ kron3(i, j, k)).real
    return t


def oracle_theta2(rho2):
    t = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            t[i, j] = np.trace(rho2 @ np.kron(SIGMA[i], SIGMA[j])).real
    return t


def oracle_ptrace(rho, keep):
    """Index-loop partial trace of an 8x8 state; keep is a tuple of qubit ids."""
    keep = tuple(sorted(keep))
    traced = [q for q in range(3) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)
    for row in range(8):
        for col in range(8):
            rb = [(row >> (2 - q)) & 1 for q in range(3)]
            cb = [(col >> (2 - q)) & 1 for q in range(3)]
            if any(rb[q] != cb[q] for q in traced):
                continue
            r_idx = 0
            c_idx = 0
            for q in keep:
                r_idx = (r_idx << 1) | rb[q]
                c_idx = (c_idx << 1) | cb[q]
            out[r_idx, c_idx] += rho[row, col]
    return out


def random_pure_density(rng, dim=8):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_mixed_density(rng, dim=8):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_unitary_2(rng):
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_octant_point(rng):
    p = np.abs(rng.standard_normal(4))
    return p / np.linalg.norm(p)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
