"""Closed form vs brute-force oracle, as a runnable report."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import core, noise, oracle, qsl, quench


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_dev: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_dev <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<24} max_dev={self.max_dev:.3e}  tol={self.tol:.0e}"


def random_params(rng, n):
    """(K, M, theta, k) with 0 < M < 2K and theta, k over full periods."""
    K = rng.uniform(0.2, 2.0, n)
    M = K * rng.uniform(0.05, 1.95, n)
    theta = rng.uniform(-math.pi, math.pi, n)
    k = rng.uniform(0.0, 2 * math.pi, n)
    return K, M, theta, k


def check_diagonalization(rng, n=10_000, angle_fn: Callable | None = None) -> CheckResult:
    angle_fn = angle_fn or core.bogoliubov_angle
    worst = 0.0
    for K, M, th, k in zip(*random_params(rng, n)):
        p = core.ModelParams(float(K), float(M), float(th))
        bands = core.band_energies(p, float(k))
        U = core.rotation(angle_fn(p, float(k)))
        D = U.T @ core.block_matrix(p, float(k)) @ U
        scale = abs(bands.eps_alpha) + abs(bands.eps_beta) + 1.0
        dev = max(abs(D[0, 1]), abs(D[1, 0]), abs(D[0, 0] - bands.eps_alpha), abs(D[1, 1] - bands.eps_beta))
        worst = max(worst, dev / scale)
    return CheckResult("diagonalization", worst, 1e-10)


def check_eigenvalues(rng, n=10_000) -> CheckResult:
    worst = 0.0
    for K, M, th, k in zip(*random_params(rng, n)):
        bands = core.band_energies(core.ModelParams(float(K), float(M), float(th)), float(k))
        (lo, hi), _ = oracle.numeric_eigensystem(oracle.TwoByTwoBlock.creutz(K, M, th, k))
        worst = max(worst, abs(lo - bands.eps_alpha), abs(hi - bands.eps_beta))
    return CheckResult("eigenvalues", worst, 1e-10)


def check_mode_le(rng, n=1_000) -> CheckResult:
    K, M, th1, k = random_params(rng, n)
    th2 = rng.uniform(-math.pi, math.pi, n)
    t = rng.uniform(0.0, 50.0, n)
    two_eta, gap = quench.mode_terms(K, M, th1, th2, k)
    closed = 1.0 - np.sin(two_eta) ** 2 * np.sin(0.5 * gap * t) ** 2
    ref = np.array([oracle.numeric_mode_le(*args) for args in zip(K, M, th1, th2, k, t)])
    return CheckResult("mode_le", float(np.max(np.abs(closed - ref))), 1e-9)


def check_energy_variance(rng, n=50) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        K, M, th1, _k = (float(x[0]) for x in random_params(rng, 1))
        th2 = float(rng.uniform(-math.pi, math.pi))
        L = int(rng.integers(2, 40))
        closed = qsl.energy_variance(quench.QuenchSpec(K, M, th1, th2, L))
        ref = oracle.numeric_energy_variance(K, M, th1, th2, L)
        worst = max(worst, abs(closed**2 - ref**2) / max(1.0, ref**2))
    return CheckResult("energy_variance", worst, 1e-10)


def check_exact_zeros(K=1.0, M=1.0, theta1=0.25 * math.pi, L=22) -> CheckResult:
    worst = 0.0
    for sol in quench.allowed_modes(K, M, theta1, L):
        if sol.is_zero_mode:
            continue
        spec = quench.QuenchSpec(K, M, theta1, sol.theta2, L)
        for t in quench.critical_times(sol, 2):
            worst = max(worst, quench.loschmidt_echo(spec, t)[1])
    return CheckResult("exact_zeros", worst, 1e-12)


def check_mixed_le(rng, n=5) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        K, M, th1, _k = (float(x[0]) for x in random_params(rng, 1))
        base = float(rng.uniform(-1.5, 1.5))
        L = int(rng.integers(2, 5))
        t = float(rng.uniform(0.0, 10.0))
        ens = noise.sample_noise(base, 0.3, 4, int(rng.integers(2**31)))
        closed = noise.mixed_le(quench.QuenchSpec(K, M, th1, base, L), ens, t)
        ref = oracle.numeric_mixed_le(K, M, th1, (base + ens.samples).tolist(), L, t)
        worst = max(worst, abs(closed - ref))
    return CheckResult("mixed_le", worst, 1e-10)


def check_noise_determinism(seed=7) -> CheckResult:
    sol = qsl.select_solution(1.0, 1.0, 0.25 * math.pi, 50, "max")
    spec = quench.QuenchSpec(1.0, 1.0, 0.25 * math.pi, sol.theta2, 50)
    a = noise.mixed_le(spec, noise.sample_noise(sol.theta2, 0.1, 1000, seed), sol.t_first)
    b = noise.mixed_le(spec, noise.sample_noise(sol.theta2, 0.1, 1000, seed), sol.t_first)
    return CheckResult("noise_determinism", abs(a - b), 1e-12)


def run_checks(seed: int = 0, angle_fn: Callable | None = None) -> list[CheckResult]:
    """Run every oracle comparison. ``angle_fn`` replaces the Bogoliubov angle (test hook)."""
    rng = np.random.default_rng(seed)
    return [
        check_diagonalization(rng, angle_fn=angle_fn),
        check_eigenvalues(rng),
        check_mode_le(rng),
        check_energy_variance(rng),
        check_exact_zeros(),
        check_mixed_le(rng),
        check_noise_determinism(),
    ]


def wrong_branch_angle(params, k):
    """Single-argument arctan: loses the quadrant and swaps bands half the time."""
    eq, ep, eqp = core.block_entries(params, k)
    return math.atan(2 * eqp / (eq - ep)) if eq != ep else math.pi / 2
