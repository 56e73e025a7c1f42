"""
Data behind each figure panel, as plain rows.

Every generator takes a :class:`RunConfig` (already merged with the panel
defaults in :data:`DEFAULTS`) and returns ``(columns, rows)``. Sweeps over
sizes or phases go through :func:`pmap`, which keeps input order, so the
output does not depend on the worker count.

Axis mapping:

=========  ===================================  ==========================
panel      x                                    y
=========  ===================================  ==========================
fig2a-c    inv_L2 = 1/L^2                       delta_c (theory: dashed)
fig3       t                                    rate, one curve per theta2
fig4a      L                                    tau_fmax (asymptote dashed)
fig4b      L                                    tau_fmin (tau_c dashed)
fig5a/b    L                                    tau_qsl
fig6a      L                                    le at time t
fig6b      L                                    tau_qsl
fig7a-d    theta1                               mean / variance of tau_qsl
fig8a/b    L                                    tau_qsl_noiseless, tau_qsl_noisy
=========  ===================================  ==========================
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from . import core, noise, qsl, quench
from .config import RunConfig

SQRT3 = math.sqrt(3.0)
DEFAULT_THETA1S = (0.05 * math.pi, 0.25 * math.pi, 0.45 * math.pi)

_FIG2_PARAMS = {
    "fig2a": (1.0, 1.0),
    "fig2b": (1.0, SQRT3),
    "fig2c": (math.sqrt(2.0), SQRT3 - 1.0),
}

DEFAULTS: dict[str, dict] = {
    **{
        name: {"K": K, "M": M, "theta1": 0.25 * math.pi, "L_min": 49, "L_max": 1000}
        for name, (K, M) in _FIG2_PARAMS.items()
    },
    "fig3": {"K": 1.0, "M": 1.0, "theta1": 0.25 * math.pi, "L": 22, "t_max": 20.0},
    "fig4a": {"K": 1.0, "M": 1.0, "L_min": 50, "L_max": 1001, "step": 3},
    "fig4b": {"K": 1.0, "M": 1.0, "L_min": 50, "L_max": 1001, "step": 3},
    "fig5a": {"K": 1.0, "M": 1.0, "L_min": 50, "L_max": 1001, "step": 3, "which": "max"},
    "fig5b": {"K": 1.0, "M": 1.0, "L_min": 50, "L_max": 1001, "step": 3, "which": "min"},
    "fig6a": {"K": 1.0, "M": 1.0, "theta1": 0.05 * math.pi, "theta2": 0.0, "t": 1.0,
              "L_min": 51, "L_max": 300},
    "fig6b": {"K": 1.0, "M": 1.0, "theta1": 0.05 * math.pi, "theta2": 0.0, "t": 1.0,
              "L_min": 51, "L_max": 300},
    **{
        f"fig7{p}": {"K": 1.0, "M": 1.0, "L_min": 50, "L_max": 1001, "step": 3,
                     "which": "max" if p in "ab" else "min"}
        for p in "abcd"
    },
    "fig8a": {"K": 1.0, "M": 1.0, "theta1": 0.25 * math.pi, "L_min": 50, "L_max": 1001,
              "step": 3, "which": "max", "noise_fraction": 0.1, "noise_count": 1000},
    "fig8b": {"K": 1.0, "M": 1.0, "theta1": 0.25 * math.pi, "L_min": 50, "L_max": 1001,
              "step": 3, "which": "min", "noise_fraction": 0.1, "noise_count": 1000},
}

FIGURE_IDS = tuple(DEFAULTS)


def pmap(fn, items, workers: int = 1) -> list:
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def theta1_grid(n: int, span: float = 0.45 * math.pi) -> np.ndarray:
    """Symmetric grid on [-span, span]; ``n`` must be even so 0 is skipped."""
    if n < 4 or n % 2:
        raise ValueError(f"theta1 grid needs an even number of points >= 4, got {n}")
    return np.linspace(-span, span, n)


# -- fig2 --------------------------------------------------------------------


def _delta_c_point(L, K, M, theta1):
    return quench.delta_c(K, M, theta1, L), quench.delta_c_asymptote(K, M, theta1, L)


def delta_c_families(cfg: RunConfig, step=None):
    """Rows ``(family, L, inv_L2, delta_c, theory)`` for families starting at L_min and L_min + 1."""
    params = core.ModelParams(cfg.K, cfg.M)
    if step is None:
        step = core.commensurate_period(params)
    rows = []
    for start in (cfg.L_min, cfg.L_min + 1):
        sizes = list(range(start, cfg.L_max + 1, step))
        values = pmap(partial(_delta_c_point, K=cfg.K, M=cfg.M, theta1=cfg.theta1), sizes, cfg.workers)
        for L, (dc, theory) in zip(sizes, values):
            rows.append((f"L_i={start}", L, 1.0 / L**2, dc, theory))
    return ["family", "L", "inv_L2", "delta_c", "theory"], rows


def fig2(cfg: RunConfig, explicit=frozenset()):
    return delta_c_families(cfg, step=cfg.step if "step" in explicit else None)


# -- fig3 --------------------------------------------------------------------


def distinct_solutions(sols, tol=1e-12):
    """Group mirror partners (equal theta2), ordered by the lowest index in each group."""
    groups: list[list[quench.ZeroSolution]] = []
    for s in sorted(sols, key=lambda s: (s.theta2, s.j)):
        if groups and abs(groups[-1][0].theta2 - s.theta2) <= tol:
            groups[-1].append(s)
        else:
            groups.append([s])
    groups = [sorted(g, key=lambda s: s.j) for g in groups]
    return sorted(groups, key=lambda g: g[0].j)


def fig3(cfg: RunConfig, explicit=frozenset()):
    sols = [s for s in quench.allowed_modes(cfg.K, cfg.M, cfg.theta1, cfg.L) if not s.is_zero_mode]
    base = np.linspace(cfg.t_min, cfg.t_max, cfg.t_points)
    rows = []
    for group in distinct_solutions(sols):
        sol = group[0]
        n_max = int(math.floor((cfg.t_max * sol.gap / (2 * math.pi)) - 0.5))
        crit = quench.critical_times(sol, n_max) if n_max >= 0 else []
        crit = [t for t in crit if cfg.t_min <= t <= cfg.t_max]
        times = np.union1d(base, crit)
        trace = quench.rate_function(quench.QuenchSpec(cfg.K, cfg.M, cfg.theta1, sol.theta2, cfg.L), times)
        label = "/".join(str(s.j) for s in group)
        for t, r, d in zip(trace.times, trace.rate, trace.divergent):
            rows.append((sol.theta2, label, sol.t_first, float(t), float(r), bool(d)))
    return ["theta2", "modes", "t_first", "t", "rate", "divergent"], rows


# -- fig4 / fig5 -------------------------------------------------------------


def _theta1s(cfg, explicit):
    return (cfg.theta1,) if "theta1" in explicit else DEFAULT_THETA1S


def _extrema_point(L, K, M, theta1):
    ext = qsl.tau_f_extrema(K, M, theta1, L)
    return ext.tau_fmax, ext.tau_fmin


def fig4(cfg: RunConfig, explicit=frozenset(), panel="a"):
    sizes = qsl.sweep_sizes(cfg.L_min, cfg.L_max, cfg.step)
    rows = []
    for th in _theta1s(cfg, explicit):
        values = pmap(partial(_extrema_point, K=cfg.K, M=cfg.M, theta1=th), sizes, cfg.workers)
        if panel == "b":
            tau_c = qsl.tau_c_asymptote(cfg.K, cfg.M, th)
        for L, (tmax, tmin) in zip(sizes, values):
            if panel == "a":
                rows.append((th, L, tmax, qsl.tau_fmax_asymptote(cfg.K, cfg.M, L)))
            else:
                rows.append((th, L, tmin, tau_c))
    if panel == "a":
        return ["theta1", "L", "tau_fmax", "asymptote"], rows
    return ["theta1", "L", "tau_fmin", "tau_c"], rows


def _qsl_point(L, K, M, theta1, which):
    sol, dE, tau = qsl.qsl_case(K, M, theta1, L, which)
    return sol.theta2, qsl.first_divergence_time(sol), dE, tau


def fig5(cfg: RunConfig, explicit=frozenset()):
    sizes = qsl.sweep_sizes(cfg.L_min, cfg.L_max, cfg.step)
    rows = []
    for th in _theta1s(cfg, explicit):
        values = pmap(partial(_qsl_point, K=cfg.K, M=cfg.M, theta1=th, which=cfg.which), sizes, cfg.workers)
        for L, (theta2, tau_f, dE, tau) in zip(sizes, values):
            rows.append((th, L, theta2, tau_f, dE, tau))
    return ["theta1", "L", "theta2", "tau_f", "delta_e", "tau_qsl"], rows


# -- fig6 --------------------------------------------------------------------


def commensurate_range(cfg: RunConfig) -> list[int]:
    sizes = core.commensurate_sizes(core.ModelParams(cfg.K, cfg.M), cfg.L_max)
    return [L for L in sizes if L >= cfg.L_min]


def fig6(cfg: RunConfig, explicit=frozenset(), panel="a"):
    theta2 = 0.0 if cfg.theta2 is None else cfg.theta2
    rows = []
    for L in commensurate_range(cfg):
        spec = quench.QuenchSpec(cfg.K, cfg.M, cfg.theta1, theta2, L)
        log_le, le = quench.loschmidt_echo(spec, cfg.t)
        if panel == "a":
            rows.append((L, cfg.t, le, log_le))
        else:
            dE = qsl.energy_variance(spec)
            rows.append((L, cfg.t, dE, qsl.qsl_time(le, dE), qsl.mt_bound(dE)))
    if panel == "a":
        return ["L", "t", "le", "log_le"], rows
    return ["L", "t", "delta_e", "tau_qsl", "mt_bound"], rows


# -- fig7 --------------------------------------------------------------------


def _stats_point(theta1, K, M, which, L_min, L_max, step, normalization):
    st = qsl.qsl_sweep_stats(K, M, theta1, which, L_min, L_max, step, normalization)
    return st.mean, st.variance, st.sample_count


def theta1_sweep(cfg: RunConfig):
    """``(theta1, mean, variance, count)`` over the symmetric theta1 grid."""
    thetas = theta1_grid(cfg.theta1_points)
    fn = partial(
        _stats_point, K=cfg.K, M=cfg.M, which=cfg.which, L_min=cfg.L_min,
        L_max=cfg.L_max, step=cfg.step, normalization=cfg.normalization,
    )
    values = pmap(fn, thetas.tolist(), cfg.workers)
    return [(float(th), *v) for th, v in zip(thetas, values)]


def fig7(cfg: RunConfig, explicit=frozenset(), quantity="mean"):
    col = 1 if quantity == "mean" else 2
    rows = [(r[0], r[col], r[3], cfg.normalization) for r in theta1_sweep(cfg)]
    return ["theta1", quantity, "sample_count", "normalization"], rows


# -- fig8 --------------------------------------------------------------------


def _noise_point(L, K, M, theta1, which, fraction, count, seed):
    r = noise.noise_row(K, M, theta1, L, which, fraction, count, seed)
    return r.tau_qsl_noiseless, r.tau_qsl_noisy, r.theta_used, r.mean_dE


NOISE_COLUMNS = ["L", "tau_qsl_noiseless", "tau_qsl_noisy", "theta_used", "mean_dE"]


def noise_sweep(cfg: RunConfig, sizes=None):
    if sizes is None:
        sizes = qsl.sweep_sizes(cfg.L_min, cfg.L_max, cfg.step)
    fn = partial(
        _noise_point, K=cfg.K, M=cfg.M, theta1=cfg.theta1, which=cfg.which,
        fraction=cfg.noise_fraction, count=cfg.noise_count, seed=cfg.seed,
    )
    return NOISE_COLUMNS, [(L, *v) for L, v in zip(sizes, pmap(fn, sizes, cfg.workers))]


def fig8(cfg: RunConfig, explicit=frozenset()):
    return noise_sweep(cfg)


GENERATORS = {
    "fig2a": fig2, "fig2b": fig2, "fig2c": fig2,
    "fig3": fig3,
    "fig4a": partial(fig4, panel="a"), "fig4b": partial(fig4, panel="b"),
    "fig5a": fig5, "fig5b": fig5,
    "fig6a": partial(fig6, panel="a"), "fig6b": partial(fig6, panel="b"),
    "fig7a": partial(fig7, quantity="mean"), "fig7b": partial(fig7, quantity="variance"),
    "fig7c": partial(fig7, quantity="mean"), "fig7d": partial(fig7, quantity="variance"),
    "fig8a": fig8, "fig8b": fig8,
}


def figure_data(fig_id: str, cfg: RunConfig, explicit=frozenset()):
    if fig_id not in GENERATORS:
        raise KeyError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    return GENERATORS[fig_id](cfg, explicit)
