"""
Brute-force reference for the closed-form expressions.

Everything here works on the raw 2x2 block with scalar ``math``/``cmath``
arithmetic: eigenvectors come from the characteristic polynomial, not from
the Bogoliubov angle, and time evolution is an explicit spectral sum. None
of it imports the main code path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TwoByTwoBlock:
    """Real symmetric matrix [[a, b], [b, d]]."""

    a: float
    b: float
    d: float

    @classmethod
    def creutz(cls, K, M, theta, k) -> "TwoByTwoBlock":
        eq = 2 * K * math.cos(k - theta)
        ep = 2 * K * math.cos(k + theta)
        eqp = 2 * K * math.cos(k) + M
        return cls(-eq, -eqp, -ep)

    @property
    def trace(self) -> float:
        return self.a + self.d

    def apply(self, v):
        return (self.a * v[0] + self.b * v[1], self.b * v[0] + self.d * v[1])


def _unit(x, y):
    n = math.hypot(x, y)
    return (x / n, y / n)


def numeric_eigensystem(block: TwoByTwoBlock):
    """
    Ascending eigenvalues and matching orthonormal eigenvectors.

    For each eigenvalue the null vector of (H - lam) is read off whichever
    row has the larger norm, which keeps the result well conditioned.
    """
    a, b, d = block.a, block.b, block.d
    mean = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), b)
    lo, hi = mean - r, mean + r
    if r == 0.0:
        return (lo, hi), ((1.0, 0.0), (0.0, 1.0))
    # rows of (H - lo): (a - lo, b) and (b, d - lo); null vector is orthogonal to the row
    row1 = (a - lo, b)
    row2 = (b, d - lo)
    row = row1 if math.hypot(*row1) >= math.hypot(*row2) else row2
    v_lo = _unit(-row[1], row[0])
    v_hi = (-v_lo[1], v_lo[0])
    return (lo, hi), (v_lo, v_hi)


def evolve(block: TwoByTwoBlock, psi, t: float):
    """exp(-i H t) psi via the spectral decomposition of H."""
    (e0, e1), (v0, v1) = numeric_eigensystem(block)
    c0 = v0[0] * psi[0] + v0[1] * psi[1]
    c1 = v1[0] * psi[0] + v1[1] * psi[1]
    p0 = cmath.exp(-1j * e0 * t) * c0
    p1 = cmath.exp(-1j * e1 * t) * c1
    return (p0 * v0[0] + p1 * v1[0], p0 * v0[1] + p1 * v1[1])


def ground_state(K, M, theta, k):
    return numeric_eigensystem(TwoByTwoBlock.creutz(K, M, theta, k))[1][0]


def numeric_mode_le(K, M, theta1, theta2, k, t) -> float:
    """|<psi| exp(-i H_f t) |psi>|^2 with psi the lower eigenvector of H_i."""
    psi = ground_state(K, M, theta1, k)
    out = evolve(TwoByTwoBlock.creutz(K, M, theta2, k), psi, t)
    amp = psi[0] * out[0] + psi[1] * out[1]
    return abs(amp) ** 2


def mode_moments(K, M, theta1, theta2, k):
    """<H_f> and <H_f^2> in the pre-quench lower eigenvector."""
    psi = ground_state(K, M, theta1, k)
    block = TwoByTwoBlock.creutz(K, M, theta2, k)
    h = block.apply(psi)
    first = psi[0] * h[0] + psi[1] * h[1]
    second = h[0] * h[0] + h[1] * h[1]
    return first, second


def numeric_energy_variance(K, M, theta1, theta2, L) -> float:
    total = 0.0
    for j in range(L):
        first, second = mode_moments(K, M, theta1, theta2, 2 * math.pi * j / L)
        total += second - first * first
    return math.sqrt(max(total, 0.0))


def numeric_mixed_le(K, M, theta1, theta2s, L, t) -> float:
    """
    Relative purity tr(rho0 rho_t) / tr(rho0^2) with explicit density matrices.

    With one fermion per momentum, the many-body state is the tensor product
    of the per-mode spinors; it is expanded into a dense vector of length
    2**L, so keep L small.
    """

    def kron(vectors):
        out = [1.0 + 0j]
        for v in vectors:
            out = [x * y for x in out for y in v]
        return out

    def outer(u):
        return [[x * y.conjugate() for y in u] for x in u]

    def trace_product(a, b):
        n = len(a)
        return sum(a[i][j] * b[j][i] for i in range(n) for j in range(n))

    ks = [2 * math.pi * j / L for j in range(L)]
    initial = [ground_state(K, M, theta1, k) for k in ks]
    rho0 = outer(kron(initial))
    n = len(rho0)
    rho_sum = [[0j] * n for _ in range(n)]
    for th2 in theta2s:
        psit = kron([evolve(TwoByTwoBlock.creutz(K, M, th2, k), v, t) for k, v in zip(ks, initial)])
        branch = outer(psit)
        for i in range(n):
            for j in range(n):
                rho_sum[i][j] += branch[i][j]
    Z = sum(rho_sum[i][i] for i in range(n))
    rho_t = [[x / Z for x in row] for row in rho_sum]
    return (trace_product(rho0, rho_t) / trace_product(rho0, rho0)).real
