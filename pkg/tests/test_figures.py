import math

import numpy as np
import pytest

from creutz_dqpt import figures, quench
from creutz_dqpt.cli import render
from creutz_dqpt.config import RunConfig

PI = math.pi


def cfg_for(fig_id, **over):
    return RunConfig().updated(figures.DEFAULTS[fig_id]).updated(over)


def test_figure_ids():
    expected = {"fig2a", "fig2b", "fig2c", "fig3", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b"}
    expected |= {f"fig7{p}" for p in "abcd"} | {"fig8a", "fig8b"}
    assert set(figures.FIGURE_IDS) == expected == set(figures.GENERATORS)


def test_unknown_figure():
    with pytest.raises(KeyError):
        figures.figure_data("fig1", RunConfig())


def test_fig2_families():
    cols, rows = figures.figure_data("fig2a", cfg_for("fig2a", L_max=200))
    assert cols == ["family", "L", "inv_L2", "delta_c", "theory"]
    fams = {r[0] for r in rows}
    assert fams == {"L_i=49", "L_i=50"}
    assert [r[1] for r in rows if r[0] == "L_i=49"][:3] == [49, 52, 55]
    assert all(r[2] == 1 / r[1] ** 2 for r in rows)


@pytest.mark.parametrize("fig_id,step", [("fig2b", 12), ("fig2c", 24)])
def test_fig2_step_follows_period(fig_id, step):
    _, rows = figures.figure_data(fig_id, cfg_for(fig_id, L_max=200))
    Ls = [r[1] for r in rows if r[0] == "L_i=49"]
    assert np.all(np.diff(Ls) == step)


def test_fig3_distinct_curves():
    cols, rows = figures.figure_data("fig3", cfg_for("fig3", t_points=201))
    theta2s = sorted({r[0] for r in rows})
    assert len(theta2s) == 5  # ten modes, paired by mirror symmetry
    t_first = {r[0]: r[2] for r in rows}
    for th in theta2s:
        hits = [r for r in rows if r[0] == th and r[5]]
        assert hits and min(h[3] for h in hits) == pytest.approx(t_first[th])


def test_distinct_solutions_pairs_mirrors():
    groups = figures.distinct_solutions(quench.allowed_modes(1, 1, 0.25 * PI, 22))
    assert [[s.j for s in g] for g in groups] == [[5, 17], [6, 16], [7, 15], [8, 14], [9, 13]]


def test_fig4_panels():
    cfg = cfg_for("fig4a", L_max=200)
    cols_a, rows_a = figures.figure_data("fig4a", cfg)
    cols_b, rows_b = figures.figure_data("fig4b", cfg)
    assert cols_a == ["theta1", "L", "tau_fmax", "asymptote"]
    assert cols_b == ["theta1", "L", "tau_fmin", "tau_c"]
    assert len({r[0] for r in rows_a}) == 3
    assert all(r[2] >= r2[2] for r, r2 in zip(rows_a, rows_b))


def test_fig4_explicit_theta1():
    cfg = cfg_for("fig4a", L_max=100, theta1=0.1)
    _, rows = figures.figure_data("fig4a", cfg, frozenset({"theta1"}))
    assert {r[0] for r in rows} == {0.1}


def test_fig5_bound_below_tau_f():
    _, rows = figures.figure_data("fig5b", cfg_for("fig5b", L_max=200))
    assert all(r[5] < r[3] for r in rows)


def test_fig6_panels():
    _, a = figures.figure_data("fig6a", cfg_for("fig6a", L_max=120))
    _, b = figures.figure_data("fig6b", cfg_for("fig6b", L_max=120))
    assert [r[0] for r in a] == list(range(51, 121, 3))
    assert all(0 < r[2] < 1 for r in a)
    le = [r[2] for r in a]
    assert all(y < x for x, y in zip(le, le[1:]))
    for (L, t, dE, tau, mt), ra in zip(b, a):
        assert tau <= mt and tau == pytest.approx(math.acos(math.sqrt(ra[2])) / dE)


def test_theta1_grid():
    g = figures.theta1_grid(20)
    assert g.size == 20 and g[0] == -0.45 * PI and g[-1] == 0.45 * PI and 0.0 not in g
    assert np.allclose(g, -g[::-1])
    with pytest.raises(ValueError):
        figures.theta1_grid(7)


def test_fig7_small():
    cfg = cfg_for("fig7a", L_max=110, theta1_points=4)
    cols, rows = figures.figure_data("fig7a", cfg)
    assert cols == ["theta1", "mean", "sample_count", "normalization"]
    assert len(rows) == 4 and rows[0][2] == 21
    # the two branches are mirror images
    assert rows[0][1] == pytest.approx(rows[-1][1], rel=1e-12)


def test_fig8_small():
    cfg = cfg_for("fig8a", L_max=65, noise_count=100)
    cols, rows = figures.figure_data("fig8a", cfg)
    assert cols == figures.NOISE_COLUMNS and len(rows) == 6
    assert all(r[2] < r[1] for r in rows)


def test_workers_do_not_change_output():
    cfg = cfg_for("fig5a", L_max=150)
    one = render(*figures.figure_data("fig5a", cfg))
    two = render(*figures.figure_data("fig5a", cfg.updated({"workers": 2})))
    assert one == two
