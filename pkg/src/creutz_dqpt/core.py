"""
Static Creutz-ladder model in momentum space.

Each wave number k carries a real symmetric 2x2 block

    H(k) = -[[eps_q, eps_qp], [eps_qp, eps_p]]

with eps_q = 2K cos(k - theta), eps_p = 2K cos(k + theta) and
eps_qp = 2K cos(k) + M. A rotation by half the Bogoliubov angle gamma_k
diagonalizes the block into the lower (alpha) and upper (beta) bands.

Functions taking a wave number accept scalars or numpy arrays and
broadcast; scalar input gives scalar output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IncommensurateError, InvalidSizeError, NoGaplessModeError

# |eps_qp| below this (relative to 2K + M) marks a grid point as an exact zero mode
ZERO_MODE_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Hopping amplitudes K, M and Peierls phase theta (radians)."""

    K: float
    M: float
    theta: float = 0.0

    def __post_init__(self):
        if not (self.K > 0 and self.M > 0):
            raise ValueError(f"K and M must be positive, got K={self.K}, M={self.M}")
        if not (-math.pi < self.theta <= math.pi):
            raise ValueError(f"theta must lie in (-pi, pi], got {self.theta}")

    def require_gapless(self):
        if not self.M < 2 * self.K:
            raise NoGaplessModeError(
                f"gap-closing modes need M < 2K (K={self.K}, M={self.M})"
            )

    def with_theta(self, theta: float) -> "ModelParams":
        return ModelParams(self.K, self.M, theta)


@dataclass(frozen=True)
class MomentumGrid:
    L: int
    points: np.ndarray

    def __len__(self):
        return self.L


@dataclass(frozen=True)
class BandEnergies:
    eps_alpha: float
    eps_beta: float
    eps_alpha_tilde: float
    eps_beta_tilde: float


def grid_points(L: int) -> np.ndarray:
    """k_j = 2 pi j / L for j = 0..L-1, without the L >= 2 check."""
    return 2.0 * np.pi * np.arange(L) / L


def momentum_grid(L: int) -> MomentumGrid:
    if int(L) != L or L < 2:
        raise InvalidSizeError(f"grid size must be an integer >= 2, got {L}")
    L = int(L)
    return MomentumGrid(L, grid_points(L))


# -- vectorized kernels, shared with the quench and noise layers ------------


def _scalarize(x):
    return float(x) if np.ndim(x) == 0 else x


def eps_qp(K, M, k):
    return 2.0 * K * np.cos(k) + M


def twisted_hopping(K, theta, k):
    """2K sin(k) sin(theta); half of eps_q - eps_p, free of cancellation."""
    return 2.0 * K * np.sin(k) * np.sin(theta)


def half_gap(K, M, theta, k):
    return np.hypot(eps_qp(K, M, k), twisted_hopping(K, theta, k))


def degenerate(K, M, r):
    """True where the half gap ``r`` is zero up to rounding."""
    return r <= ZERO_MODE_TOL * (2.0 * K + M)


def angle(K, M, theta, k):
    # eps_q - eps_p = 4K sin k sin theta exactly; evaluated in product form.
    # At the degenerate point (both entries zero up to rounding) gamma := 0.
    y = eps_qp(K, M, k)
    x = twisted_hopping(K, theta, k)
    gamma = np.arctan2(y, x)
    return np.where(degenerate(K, M, np.hypot(x, y)), 0.0, gamma)


# -- public operations -------------------------------------------------------


def block_entries(params: ModelParams, k):
    """Return ``(eps_q, eps_p, eps_qp)`` of the momentum-space block."""
    K, M, th = params.K, params.M, params.theta
    return (
        _scalarize(2.0 * K * np.cos(k - th)),
        _scalarize(2.0 * K * np.cos(k + th)),
        _scalarize(eps_qp(K, M, k)),
    )


def block_matrix(params: ModelParams, k: float) -> np.ndarray:
    eq, ep, eqp = block_entries(params, k)
    return -np.array([[eq, eqp], [eqp, ep]])


def bogoliubov_angle(params: ModelParams, k):
    """
    Bogoliubov rotation angle gamma_k in (-pi, pi].

    The branch is fixed by ``atan2(2 eps_qp, eps_q - eps_p)``. With this
    choice the columns of ``rotation(gamma / 2)`` are the alpha and beta
    eigenvectors, in that order (see :func:`rotation`).
    """
    return _scalarize(angle(params.K, params.M, params.theta, k))


def rotation(gamma: float) -> np.ndarray:
    """Orthogonal matrix U with U.T @ H(k) @ U = diag(eps_alpha, eps_beta)."""
    c, s = math.cos(gamma / 2), math.sin(gamma / 2)
    return np.array([[c, -s], [s, c]])


def band_energies(params: ModelParams, k) -> BandEnergies:
    K, M, th = params.K, params.M, params.theta
    centre = -2.0 * K * np.cos(k) * np.cos(th)
    r = half_gap(K, M, th, k)
    a, b = centre - r, centre + r
    return BandEnergies(
        _scalarize(a), _scalarize(b), _scalarize(a - M), _scalarize(b - M)
    )


def band_gap(params: ModelParams, k):
    """Quasiparticle gap eps_beta - eps_alpha (identical for tilde energies)."""
    return _scalarize(2.0 * half_gap(params.K, params.M, params.theta, k))


def gap_closing_modes(params: ModelParams) -> tuple[float, float]:
    """Wave numbers ``(pi - arccos(M/2K), pi + arccos(M/2K))``."""
    params.require_gapless()
    phi = math.acos(params.M / (2 * params.K))
    return math.pi - phi, math.pi + phi


def closing_fraction(
    params: ModelParams, max_denominator: int = 64, tol: float = 1e-9
) -> Fraction:
    """Recover s/r with arccos(M/2K) = (s/r) pi by continued fractions."""
    params.require_gapless()
    x = math.acos(params.M / (2 * params.K)) / math.pi
    frac = Fraction(x).limit_denominator(max_denominator)
    if abs(float(frac) - x) > tol:
        raise IncommensurateError(
            f"arccos(M/2K)/pi = {x!r} is not rational with denominator <= "
            f"{max_denominator}"
        )
    return frac


def commensurate_period(
    params: ModelParams,
    s: int | None = None,
    r: int | None = None,
    max_denominator: int = 64,
) -> int:
    """Smallest L placing both gap-closing modes on the grid."""
    if s is None or r is None:
        frac = closing_fraction(params, max_denominator)
        s, r = frac.numerator, frac.denominator
    lo = Fraction(r - s, 2 * r).denominator
    hi = Fraction(r + s, 2 * r).denominator
    return math.lcm(lo, hi)


def commensurate_sizes(
    params: ModelParams,
    L_max: int,
    s: int | None = None,
    r: int | None = None,
    max_denominator: int = 64,
) -> list[int]:
    """
    All chain lengths L <= L_max on which both gap-closing modes are grid points.

    Pass ``s`` and ``r`` to skip the rational reconstruction of
    arccos(M/2K)/pi.
    """
    period = commensurate_period(params, s, r, max_denominator)
    return list(range(period, int(L_max) + 1, period))


def is_zero_mode(K, M, k):
    return np.abs(eps_qp(K, M, k)) <= ZERO_MODE_TOL * (2.0 * K + M)
