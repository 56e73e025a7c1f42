"""
Sudden quench theta1 -> theta2 of the Peierls phase.

The initial state fills the lower (alpha) band of H(theta1) at every grid
momentum. The echo factorizes over k into

    L_k(t) = 1 - A_k sin^2(gap_k t / 2),   A_k = sin^2(gamma_k(theta1) - gamma_k(theta2)),

and is accumulated here as a sum of logs so that exact zeros survive as -inf
instead of underflowing somewhere inside a long product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import core
from .errors import ExcludedModeError, InvalidSizeError, NoCriticalTimeError

# Per-mode factors at or below this are exact zeros: it corresponds to a
# residual phase mismatch of ~1e-12 rad, i.e. floating-point noise around a zero.
EXACT_ZERO_FLOOR = 1e-24

# time-by-mode blocks are evaluated in chunks of at most this many entries
_CHUNK = 4_000_000


@dataclass(frozen=True)
class QuenchSpec:
    K: float
    M: float
    theta1: float
    theta2: float
    L: int

    def __post_init__(self):
        if not (self.K > 0 and self.M > 0):
            raise ValueError(f"K and M must be positive, got K={self.K}, M={self.M}")
        if int(self.L) != self.L or self.L < 1:
            raise InvalidSizeError(f"chain length must be a positive integer, got {self.L}")

    def with_theta2(self, theta2: float) -> "QuenchSpec":
        return replace(self, theta2=theta2)

    @property
    def momenta(self) -> np.ndarray:
        return core.grid_points(int(self.L))


@dataclass(frozen=True)
class ModeAmplitude:
    k: float
    A: float
    gap: float
    two_eta: float


@dataclass(frozen=True)
class ZeroSolution:
    """A grid mode whose factor vanishes at the critical times of ``theta2``.

    ``gap == 0`` marks a zero-energy mode sitting exactly on the grid; its
    critical times are infinite.
    """

    j: int
    k: float
    theta2: float
    gap: float
    t_first: float

    @property
    def is_zero_mode(self) -> bool:
        return self.gap == 0.0


@dataclass(frozen=True)
class LETrace:
    times: np.ndarray
    log_le: np.ndarray
    rate: np.ndarray
    divergent: np.ndarray

    @property
    def le(self) -> np.ndarray:
        return np.exp(self.log_le)


class ZeroArrays(NamedTuple):
    j: np.ndarray
    k: np.ndarray
    theta2: np.ndarray
    gap: np.ndarray
    zero_mode: np.ndarray


# -- kernels -----------------------------------------------------------------


def mode_terms(K, M, theta1, theta2, k):
    """Return ``(two_eta, gap)`` at the post-quench phase, broadcasting."""
    two_eta = core.angle(K, M, theta1, k) - core.angle(K, M, theta2, k)
    gap = 2.0 * core.half_gap(K, M, theta2, k)
    return two_eta, gap


def echo_factor(sin_2eta, cos_2eta, phase):
    """1 - sin^2(2eta) sin^2(phase), never above 1 and accurate near 0."""
    drop = sin_2eta**2 * np.sin(phase) ** 2
    # the sum-of-squares form avoids cancellation once the factor is small
    near_zero = cos_2eta**2 + sin_2eta**2 * np.cos(phase) ** 2
    return np.where(drop <= 0.5, 1.0 - drop, near_zero)


def log_factors(two_eta, gap, t):
    f = echo_factor(np.sin(two_eta), np.cos(two_eta), 0.5 * gap * t)
    with np.errstate(divide="ignore"):
        return np.where(f <= EXACT_ZERO_FLOOR, -np.inf, np.log(f))


def log_echo(K, M, theta1, theta2, L, times) -> np.ndarray:
    """ln L(t) for each entry of ``times`` (1-d), summed over the full grid."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    k = core.grid_points(int(L))
    two_eta, gap = mode_terms(K, M, theta1, theta2, k)
    out = np.empty(times.shape[0])
    step = max(1, _CHUNK // max(1, k.size))
    for start in range(0, times.size, step):
        chunk = times[start : start + step, None]
        out[start : start + step] = log_factors(two_eta, gap, chunk).sum(axis=1)
    return out


def log_echo_phases(K, M, theta1, theta2s, L, t) -> np.ndarray:
    """ln L(t) at one instant for each post-quench phase in ``theta2s``."""
    theta2s = np.atleast_1d(np.asarray(theta2s, dtype=float))
    k = core.grid_points(int(L))
    out = np.empty(theta2s.size)
    step = max(1, _CHUNK // max(1, k.size))
    for start in range(0, theta2s.size, step):
        two_eta, gap = mode_terms(K, M, theta1, theta2s[start : start + step, None], k)
        out[start : start + step] = log_factors(two_eta, gap, t).sum(axis=1)
    return out


# -- public operations -------------------------------------------------------


def mode_amplitude(spec: QuenchSpec, k: float) -> ModeAmplitude:
    two_eta, gap = mode_terms(spec.K, spec.M, spec.theta1, spec.theta2, k)
    two_eta, gap = float(two_eta), float(gap)
    return ModeAmplitude(k=float(k), A=math.sin(two_eta) ** 2, gap=gap, two_eta=two_eta)


def loschmidt_echo(spec: QuenchSpec, t: float) -> tuple[float, float]:
    """Return ``(log_le, le)``; ``le`` is exactly 0 when ``log_le`` is -inf."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    log_le = float(log_echo(spec.K, spec.M, spec.theta1, spec.theta2, spec.L, [t])[0])
    return log_le, (0.0 if log_le == -math.inf else math.exp(log_le))


def rate_function(spec: QuenchSpec, times) -> LETrace:
    """
    Rate function lambda(t) = -ln L(t) / L on a time grid.

    Samples at exact echo zeros get ``divergent = True`` and ``rate = inf``.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a non-empty 1-d sequence")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("time grid must be non-negative and ascending")
    log_le = log_echo(spec.K, spec.M, spec.theta1, spec.theta2, spec.L, times)
    divergent = np.isneginf(log_le)
    rate = -log_le / spec.L
    rate[rate == 0] = 0.0  # drop the sign of -0.0
    return LETrace(times=times, log_le=log_le, rate=rate, divergent=divergent)


def zero_condition_rhs(K: float, M: float, theta1: float, k: float) -> float:
    """The value sin(theta2) must take for mode k to reach an exact zero."""
    s = math.sin(k)
    if abs(s) <= 1e-12:
        raise ExcludedModeError(f"k = {k} has sin k = 0; the constraint is undefined")
    if math.sin(theta1) == 0:
        raise ValueError("theta1 must not be a critical phase (sin theta1 = 0)")
    return -((2 * K * math.cos(k) + M) ** 2) / ((2 * K * s) ** 2 * math.sin(theta1))


def _check_theta1(theta1):
    if not (0 < abs(theta1) <= math.pi / 2):
        raise ValueError(f"theta1 must satisfy 0 < |theta1| <= pi/2, got {theta1}")


def zero_arrays(K, M, theta1, L) -> ZeroArrays:
    """Vectorized :func:`allowed_modes`; used by the size sweeps."""
    _check_theta1(theta1)
    L = int(L)
    j = np.arange(L)
    k = core.grid_points(L)
    keep = (j != 0) & (2 * j != L)
    j, k = j[keep], k[keep]
    zero_mode = core.is_zero_mode(K, M, k)
    eqp = np.where(zero_mode, 0.0, core.eps_qp(K, M, k))
    rhs = -(eqp**2) / ((2 * K * np.sin(k)) ** 2 * math.sin(theta1))
    ok = np.abs(rhs) <= 1.0
    j, k, rhs, eqp, zero_mode = j[ok], k[ok], rhs[ok], eqp[ok], zero_mode[ok]
    theta2 = np.arcsin(rhs) + 0.0  # +0.0 turns -0.0 into 0.0
    gap = 2.0 * np.hypot(eqp, core.twisted_hopping(K, theta2, k))
    return ZeroArrays(j, k, theta2, gap, zero_mode)


def allowed_modes(K: float, M: float, theta1: float, L: int) -> list[ZeroSolution]:
    """
    All grid modes admitting an exact echo zero, ordered by grid index.

    For theta1 in (0, pi/2] the post-quench phases lie in [-pi/2, 0]; a
    negative theta1 gives the mirrored branch with theta2 in [0, pi/2].
    Grid points k = 0 and k = pi never qualify. A zero-energy mode on the
    grid shows up with ``theta2 = 0`` and ``gap = 0``.
    """
    z = zero_arrays(K, M, theta1, L)
    return [
        ZeroSolution(
            j=int(j),
            k=float(k),
            theta2=float(t2),
            gap=g,
            t_first=math.pi / g if g > 0 else math.inf,
        )
        for j, k, t2, g in zip(z.j, z.k, z.theta2, z.gap.tolist())
    ]


def critical_times(sol: ZeroSolution, n_max: int) -> list[float]:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if sol.gap <= 0:
        raise NoCriticalTimeError("a zero-energy mode has no finite critical time")
    return [2 * math.pi * (n + 0.5) / sol.gap for n in range(n_max + 1)]


def delta_c(K: float, M: float, theta1: float, L: int) -> float:
    """Smallest |theta2| over the exact-zero solutions; inf when there are none."""
    z = zero_arrays(K, M, theta1, L)
    if z.theta2.size == 0:
        return math.inf
    return float(np.min(np.abs(z.theta2)))


def delta_c_asymptote(K: float, M: float, theta1: float, L: int) -> float:
    """min over the allowed modes of (k - k_c^-)^2 / |sin theta1|."""
    k_minus, _ = core.gap_closing_modes(core.ModelParams(K, M))
    z = zero_arrays(K, M, theta1, L)
    if z.k.size == 0:
        return math.inf
    if np.any(z.zero_mode):
        return 0.0
    return float(np.min((z.k - k_minus) ** 2) / abs(math.sin(theta1)))
