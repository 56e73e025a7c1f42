"""
First divergence times of the rate function and quantum-speed-limit bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from . import core, quench
from .errors import InvalidVarianceError, NoAsymptoteError, NoSolutionError
from .quench import QuenchSpec, ZeroSolution

Which = Literal["max", "min"]
Normalization = Literal["paper", "sample-count"]

# rows of the (n_theta2 x L) work array evaluated at once
_ROWS = 512


@dataclass(frozen=True)
class TauFExtrema:
    tau_fmax: float
    sol_max: ZeroSolution
    tau_fmin: float
    sol_min: ZeroSolution
    has_zero_mode: bool = False


@dataclass(frozen=True)
class SweepStats:
    theta1: float
    mean: float
    variance: float
    sample_count: int
    normalization: str = "paper"


def first_divergence_time(sol: ZeroSolution) -> float:
    return math.pi / sol.gap if sol.gap > 0 else math.inf


def tau_f_extrema(K: float, M: float, theta1: float, L: int) -> TauFExtrema:
    """
    Largest and smallest first divergence time over the finite-gap solutions.

    Zero-energy modes on the grid (infinite tau_f) are left out and only
    flagged through ``has_zero_mode``.
    """
    sols = quench.allowed_modes(K, M, theta1, L)
    finite = [s for s in sols if not s.is_zero_mode]
    if not finite:
        raise NoSolutionError(f"no finite-gap exact-zero solution at L={L}")
    sol_max = min(finite, key=lambda s: (s.gap, s.j))
    sol_min = max(finite, key=lambda s: (s.gap, -s.j))
    return TauFExtrema(
        tau_fmax=first_divergence_time(sol_max),
        sol_max=sol_max,
        tau_fmin=first_divergence_time(sol_min),
        sol_min=sol_min,
        has_zero_mode=len(finite) < len(sols),
    )


def tau_fmax_asymptote(K: float, M: float, L: int) -> float:
    """Linearized tau_fmax from the grid point nearest k_c^-; inf when k_c^- is on the grid."""
    k_minus, _ = core.gap_closing_modes(core.ModelParams(K, M))
    k = core.grid_points(int(L))
    d = np.abs(k - k_minus)
    d = d[d > core.ZERO_MODE_TOL * max(1.0, k_minus)]
    if d.size < L:
        return math.inf
    return math.pi / (2 * abs(2 * K * math.sin(k_minus)) * float(d.min()))


def tau_c_asymptote(K: float, M: float, theta1: float) -> float:
    """
    Large-L limit of tau_fmin: the theta2 = -pi/2 edge of the allowed region.

    Solves (2K c + M)^2 = (2K)^2 (1 - c^2) |sin theta1| for c = cos k and
    keeps the root with the largest |sin k|.
    """
    s = abs(math.sin(theta1))
    a = 4 * K**2 * (1 + s)
    b = 4 * K * M
    c = M**2 - 4 * K**2 * s
    disc = b * b - 4 * a * c
    if disc < 0:
        raise NoAsymptoteError(f"no real edge mode for theta1={theta1}")
    roots = [(-b + sgn * math.sqrt(disc)) / (2 * a) for sgn in (1, -1)]
    roots = [r for r in roots if -1 <= r <= 1]
    if not roots:
        raise NoAsymptoteError(f"edge-mode roots fall outside [-1, 1] for theta1={theta1}")
    sin_k = max(math.sqrt(1 - r * r) for r in roots)
    return math.pi / (2 * abs(2 * K * sin_k) * math.sqrt(1 + s))


def variance_squared(K, M, theta1, theta2, L) -> np.ndarray:
    """(Delta E)^2 for each entry of ``theta2`` (scalar or 1-d), over the full grid."""
    theta2 = np.atleast_1d(np.asarray(theta2, dtype=float))
    k = core.grid_points(int(L))
    out = np.empty(theta2.size)
    for start in range(0, theta2.size, _ROWS):
        t2 = theta2[start : start + _ROWS, None]
        two_eta, gap = quench.mode_terms(K, M, theta1, t2, k)
        out[start : start + _ROWS] = 0.25 * np.sum(np.sin(two_eta) ** 2 * gap**2, axis=1)
    return out


def energy_variance(spec: QuenchSpec) -> float:
    """Energy spread Delta E of the initial state under the post-quench Hamiltonian."""
    v = variance_squared(spec.K, spec.M, spec.theta1, spec.theta2, spec.L)[0]
    return math.sqrt(v)


def qsl_time(le_value: float, delta_e: float) -> float:
    if not delta_e > 0:
        raise InvalidVarianceError(f"energy variance must be positive, got {delta_e}")
    le_value = min(1.0, max(0.0, le_value))
    return math.acos(math.sqrt(le_value)) / delta_e


def mt_bound(delta_e: float) -> float:
    """Mandelstam-Tamm time pi / (2 Delta E)."""
    if not delta_e > 0:
        raise InvalidVarianceError(f"energy variance must be positive, got {delta_e}")
    return math.pi / (2 * delta_e)


def select_solution(K, M, theta1, L, which: Which) -> ZeroSolution:
    ext = tau_f_extrema(K, M, theta1, L)
    if which == "max":
        return ext.sol_max
    if which == "min":
        return ext.sol_min
    raise ValueError(f"which must be 'max' or 'min', got {which!r}")


def qsl_case(K, M, theta1, L, which: Which) -> tuple[ZeroSolution, float, float]:
    """Return ``(solution, delta_e, tau_qsl)`` for the extremal quench at size L."""
    sol = select_solution(K, M, theta1, L, which)
    dE = energy_variance(QuenchSpec(K, M, theta1, sol.theta2, L))
    return sol, dE, mt_bound(dE)


def qsl_vs_size(
    K: float, M: float, theta1: float, which: Which, L_list: Iterable[int]
) -> list[tuple[int, float]]:
    return [(int(L), qsl_case(K, M, theta1, L, which)[2]) for L in L_list]


def solution_bounds(K, M, theta1, L) -> tuple[np.ndarray, np.ndarray]:
    """tau_f and the Mandelstam-Tamm time for every finite-gap solution at size L."""
    z = quench.zero_arrays(K, M, theta1, L)
    finite = ~z.zero_mode
    tau_f = np.pi / z.gap[finite]
    dE = np.sqrt(variance_squared(K, M, theta1, z.theta2[finite], L))
    return tau_f, np.pi / (2 * dE)


def sweep_sizes(L_min: int, L_max: int, step: int) -> list[int]:
    if not (L_min < L_max and step >= 1):
        raise ValueError(f"bad size range L_min={L_min}, L_max={L_max}, step={step}")
    return list(range(int(L_min), int(L_max) + 1, int(step)))


def sweep_stats(
    values, L_min: int, L_max: int, normalization: Normalization = "paper"
) -> tuple[float, float]:
    """
    Mean and variance of a size sweep.

    ``"paper"`` divides both sums by L_max - L_min regardless of how many
    sizes were sampled; ``"sample-count"`` divides by the number of samples.
    """
    v = np.asarray(values, dtype=float)
    if normalization == "paper":
        norm = float(L_max - L_min)
    elif normalization == "sample-count":
        norm = float(v.size)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    mean = float(np.sum(v)) / norm
    if normalization == "sample-count":
        # same quantity, centred form keeps it non-negative under rounding
        return mean, float(np.sum((v - mean) ** 2)) / norm
    return mean, float(np.sum(v**2 - mean**2)) / norm


def qsl_sweep_stats(
    K: float,
    M: float,
    theta1: float,
    which: Which,
    L_min: int,
    L_max: int,
    step: int,
    normalization: Normalization = "paper",
) -> SweepStats:
    sizes = sweep_sizes(L_min, L_max, step)
    values = [tau for _, tau in qsl_vs_size(K, M, theta1, which, sizes)]
    mean, var = sweep_stats(values, L_min, L_max, normalization)
    return SweepStats(theta1, mean, var, len(values), normalization)
