"""
Classical noise on the post-quench phase.

Each ensemble member evolves under H(theta2 + eta). Because the initial
state is pure and every conjugated term has unit trace, the relative-purity
echo reduces to the plain average of the per-member echoes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core, qsl, quench
from .errors import InvalidEnsembleError, InvalidVarianceError
from .quench import QuenchSpec


@dataclass(frozen=True)
class NoiseEnsemble:
    base_theta2: float
    fraction: float
    count: int
    seed: int
    samples: np.ndarray

    def phases(self) -> np.ndarray:
        return self.base_theta2 + self.samples


def sample_noise(base_theta2: float, fraction: float, count: int, seed: int) -> NoiseEnsemble:
    """Uniform perturbations in [-fraction |theta2|, fraction |theta2|] from a seeded PCG64 stream."""
    if count < 1:
        raise InvalidEnsembleError(f"ensemble needs at least one sample, got {count}")
    if fraction < 0:
        raise InvalidEnsembleError(f"noise fraction must be non-negative, got {fraction}")
    width = fraction * abs(base_theta2)
    u = np.random.default_rng(seed).uniform(-1.0, 1.0, int(count))
    samples = u * width
    samples.setflags(write=False)
    return NoiseEnsemble(float(base_theta2), float(fraction), int(count), int(seed), samples)


def mixed_le(spec: QuenchSpec, ens: NoiseEnsemble, t: float) -> float:
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    logs = quench.log_echo_phases(
        spec.K, spec.M, spec.theta1, spec.theta2 + ens.samples, spec.L, t
    )
    return float(np.sum(np.exp(logs))) / ens.count


def ensemble_mean_variance(spec: QuenchSpec, ens: NoiseEnsemble) -> float:
    """Average of Delta E over the perturbed post-quench Hamiltonians."""
    v2 = qsl.variance_squared(spec.K, spec.M, spec.theta1, spec.theta2 + ens.samples, spec.L)
    return float(np.sum(np.sqrt(v2))) / ens.count


def noisy_qsl_bound(spec: QuenchSpec, ens: NoiseEnsemble, t_eval: float) -> float:
    """
    Channel speed limit 2 theta^2 / (pi^2 <Delta E>) with theta = arccos(mixed echo).

    Note the echo itself, not its square root, is set to cos(theta) here.
    """
    if not t_eval > 0:
        raise ValueError(f"t_eval must be positive, got {t_eval}")
    mean_dE = ensemble_mean_variance(spec, ens)
    if not mean_dE > 0:
        raise InvalidVarianceError("ensemble energy variance vanishes")
    le = min(1.0, max(0.0, mixed_le(spec, ens, t_eval)))
    theta = math.acos(le)
    return 2 * theta**2 / math.pi**2 / mean_dE


@dataclass(frozen=True)
class NoiseRow:
    L: int
    tau_qsl_noiseless: float
    tau_qsl_noisy: float
    theta_used: float
    mean_dE: float


def _unit_angle(x, y, r, flat):
    """(cos, sin) of atan2(y, x); entries flagged ``flat`` are pinned to angle 0."""
    if not flat.any():
        return x / r, y / r
    safe = np.where(flat, 1.0, r)
    return np.where(flat, 1.0, x / safe), np.where(flat, 0.0, y / safe)


def _ensemble_pass(spec: QuenchSpec, phases: np.ndarray, t: float):
    """
    Per-member echo at ``t`` and Delta E for a batch of post-quench phases.

    cos/sin of gamma(theta1) - gamma(theta2) are formed from the block
    entries directly, skipping atan2; the angle convention is unchanged.
    """
    K, M = spec.K, spec.M
    k = spec.momenta
    y = core.eps_qp(K, M, k)
    x1 = core.twisted_hopping(K, spec.theta1, k)
    r1 = np.hypot(x1, y)
    c1, s1 = _unit_angle(x1, y, r1, core.degenerate(K, M, r1))
    le = np.empty(phases.size)
    dE = np.empty(phases.size)
    rows = max(1, quench._CHUNK // (4 * k.size))
    for start in range(0, phases.size, rows):
        x2 = core.twisted_hopping(K, phases[start : start + rows, None], k)
        r2 = np.hypot(x2, y)
        c2, s2 = _unit_angle(x2, y, r2, core.degenerate(K, M, r2))
        sin_2eta = s1 * c2 - c1 * s2
        cos_2eta = c1 * c2 + s1 * s2
        f = quench.echo_factor(sin_2eta, cos_2eta, r2 * t)
        with np.errstate(divide="ignore"):
            logs = np.where(f <= quench.EXACT_ZERO_FLOOR, -np.inf, np.log(f))
        le[start : start + rows] = np.exp(logs.sum(axis=1))
        dE[start : start + rows] = np.sqrt(np.sum(sin_2eta**2 * r2**2, axis=1))
    return le, dE


def noise_row(K, M, theta1, L, which, fraction, count, seed, t_eval=None) -> NoiseRow:
    """Noiseless vs noisy speed limit for the extremal quench at one size.

    ``t_eval`` defaults to the noiseless first divergence time.
    """
    sol = qsl.select_solution(K, M, theta1, L, which)
    spec = QuenchSpec(K, M, theta1, sol.theta2, L)
    dE = qsl.energy_variance(spec)
    tau = qsl.mt_bound(dE)
    ens = sample_noise(sol.theta2, fraction, count, seed)
    if t_eval is None:
        t_eval = qsl.first_divergence_time(sol)
    le, dEs = _ensemble_pass(spec, ens.phases(), t_eval)
    mean_dE = float(np.sum(dEs)) / ens.count
    theta = math.acos(min(1.0, max(0.0, float(np.sum(le)) / ens.count)))
    return NoiseRow(int(L), tau, 2 * theta**2 / math.pi**2 / mean_dE, theta, mean_dE)
