import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from creutz_dqpt import core, oracle, quench
from creutz_dqpt.errors import ExcludedModeError, NoCriticalTimeError

PI = math.pi
TH1 = 0.25 * PI


def spec(theta2, L=22, theta1=TH1, K=1.0, M=1.0):
    return quench.QuenchSpec(K, M, theta1, theta2, L)


def sol_j(L, j, theta1=TH1):
    return next(s for s in quench.allowed_modes(1, 1, theta1, L) if s.j == j)


# -- amplitudes ------------------------------------------------------------------


@given(st.floats(-3, 3), st.floats(0, 2 * PI))
def test_identity_quench_amplitude(th, k):
    assert quench.mode_amplitude(spec(th, theta1=th), k).A == 0.0


def test_amplitude_at_solution_is_one():
    s = sol_j(22, 7)
    assert s.theta2 == pytest.approx(-0.012229, abs=1e-6)
    a = quench.mode_amplitude(spec(s.theta2), s.k)
    assert abs(a.A - 1) <= 1e-10
    # independent check: the oracle overlap touches zero at the first critical time
    assert oracle.numeric_mode_le(1, 1, TH1, s.theta2, s.k, s.t_first) <= 1e-10


def test_amplitude_at_zero_mode_same_sign_phases():
    assert quench.mode_amplitude(spec(0.4), 2 * PI / 3).A == pytest.approx(0, abs=1e-20)


@given(st.floats(0.2, 2), st.floats(0.05, 1.95), st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 2 * PI))
def test_amplitude_bounds(K, r, th1, th2, k):
    a = quench.mode_amplitude(quench.QuenchSpec(K, K * r, th1, th2, 5), k)
    assert 0 <= a.A <= 1 and a.A == math.sin(a.two_eta) ** 2


# -- echo --------------------------------------------------------------------------


def test_echo_at_zero_time():
    assert quench.loschmidt_echo(spec(-0.7), 0.0) == (0.0, 1.0)


def test_single_site_identity():
    s = quench.QuenchSpec(1, 1, 0.3, 0.3, 1)
    for t in (0.0, 1.7, 40.0):
        assert quench.loschmidt_echo(s, t)[1] == 1.0


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        quench.loschmidt_echo(spec(0.1), -1.0)


@given(
    st.floats(0.2, 2), st.floats(0.05, 1.95), st.floats(-3, 3), st.floats(-3, 3),
    st.integers(1, 60), st.floats(0, 100),
)
def test_echo_normalized(K, r, th1, th2, L, t):
    log_le, le = quench.loschmidt_echo(quench.QuenchSpec(K, K * r, th1, th2, L), t)
    assert log_le <= 0 and 0 <= le <= 1


@given(
    st.floats(0.2, 2), st.floats(0.05, 1.95), st.floats(-3, 3), st.floats(-3, 3),
    st.floats(0, 2 * PI), st.floats(0, 50),
)
def test_mode_factor_matches_oracle(K, r, th1, th2, k, t):
    two_eta, gap = quench.mode_terms(K, K * r, th1, th2, k)
    closed = float(np.exp(quench.log_factors(two_eta, gap, t)))
    ref = oracle.numeric_mode_le(K, K * r, th1, th2, k, t)
    assert closed == pytest.approx(ref, abs=1e-9)


def test_echo_is_product_of_oracle_factors():
    s = spec(-0.3, L=9)
    t = 2.3
    ref = math.prod(oracle.numeric_mode_le(1, 1, TH1, -0.3, 2 * PI * j / 9, t) for j in range(9))
    assert quench.loschmidt_echo(s, t)[1] == pytest.approx(ref, rel=1e-10)


# -- rate function -------------------------------------------------------------------


def test_rate_identity_is_zero():
    tr = quench.rate_function(spec(TH1), np.linspace(0, 30, 101))
    assert np.all(tr.rate == 0) and not tr.divergent.any()


def test_rate_flags_divergence_near_first_time():
    s = sol_j(22, 7)
    assert s.t_first == pytest.approx(9.206, abs=1e-3)
    times = np.sort(np.append(np.linspace(9.0, 9.4, 41), s.t_first))
    tr = quench.rate_function(spec(s.theta2), times)
    assert tr.rate[0] >= 0
    hit = np.flatnonzero(tr.divergent)
    assert hit.tolist() == [int(np.argmin(np.abs(times - s.t_first)))]
    assert np.isinf(tr.rate[hit]).all()


def test_rate_starts_at_zero():
    tr = quench.rate_function(spec(-0.5), [0.0, 1.0])
    assert tr.rate[0] == 0.0 and tr.log_le[0] == 0.0


@pytest.mark.parametrize("times", [[], [1.0, 0.5], [-1.0, 2.0]])
def test_rate_rejects_bad_grid(times):
    with pytest.raises(ValueError):
        quench.rate_function(spec(0.1), times)


# -- zero condition ------------------------------------------------------------------


def test_rhs_examples():
    assert quench.zero_condition_rhs(1, 1, TH1, 2 * PI / 3) == pytest.approx(0, abs=1e-30)
    assert quench.zero_condition_rhs(1, 1, TH1, 7 * PI / 11) == pytest.approx(-0.012229, abs=1e-6)
    assert abs(quench.zero_condition_rhs(1, 1, TH1, PI / 11)) > 1


@pytest.mark.parametrize("k", [0.0, PI, 2 * PI])
def test_rhs_excluded(k):
    with pytest.raises(ExcludedModeError):
        quench.zero_condition_rhs(1, 1, TH1, k)


def test_rhs_brute_force_scan():
    # the residual of the zero constraint over a theta2 scan is smallest at arcsin(rhs)
    k = 7 * PI / 11
    th2 = np.linspace(-PI / 2, 0, 200_001)
    resid = np.abs(core.eps_qp(1, 1, k) ** 2 + (2 * math.sin(k)) ** 2 * math.sin(TH1) * np.sin(th2))
    best = th2[np.argmin(resid)]
    assert best == pytest.approx(math.asin(quench.zero_condition_rhs(1, 1, TH1, k)), abs=1e-5)


# -- allowed modes -------------------------------------------------------------------


def test_allowed_modes_l22():
    sols = quench.allowed_modes(1, 1, TH1, 22)
    assert [s.j for s in sols] == [5, 6, 7, 8, 9, 13, 14, 15, 16, 17]
    assert all(-PI / 2 <= s.theta2 <= 0 for s in sols)


def test_allowed_modes_include_zero_mode_when_commensurate():
    sols = quench.allowed_modes(1, 1, TH1, 21)
    zm = [s for s in sols if s.is_zero_mode]
    assert [s.j for s in zm] == [7, 14]
    assert all(s.theta2 == 0.0 and s.t_first == math.inf for s in zm)


def test_allowed_modes_l2_empty():
    assert quench.allowed_modes(1, 1, 0.3, 2) == []


def test_negative_theta1_mirrors():
    pos = quench.allowed_modes(1, 1, TH1, 40)
    neg = quench.allowed_modes(1, 1, -TH1, 40)
    assert [s.j for s in pos] == [s.j for s in neg]
    for a, b in zip(pos, neg):
        assert b.theta2 == pytest.approx(-a.theta2, abs=1e-15) and b.gap == pytest.approx(a.gap, abs=1e-13)


@pytest.mark.parametrize("th", [0.0, 2.0, -1.8])
def test_theta1_range(th):
    with pytest.raises(ValueError):
        quench.allowed_modes(1, 1, th, 22)


@given(st.floats(0.3, 2), st.floats(0.1, 1.9), st.floats(0.02, PI / 2), st.integers(2, 300))
def test_solution_invariants(K, r, th1, L):
    M = K * r
    for s in quench.allowed_modes(K, M, th1, L):
        lhs = (2 * K * math.cos(s.k) + M) ** 2
        rhs = -(2 * K * math.sin(s.k)) ** 2 * math.sin(th1) * math.sin(s.theta2)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, lhs)
        if s.gap > 0:
            assert s.t_first == PI / s.gap
            assert abs(quench.mode_amplitude(quench.QuenchSpec(K, M, th1, s.theta2, L), s.k).A - 1) <= 1e-10


@given(st.floats(0.3, 2), st.floats(0.1, 1.9), st.floats(0.02, PI / 2), st.integers(3, 300))
def test_mirror_pairing(K, r, th1, L):
    sols = {s.j: s for s in quench.allowed_modes(K, K * r, th1, L)}
    for j, s in sols.items():
        if L - j in sols:
            assert s.theta2 == pytest.approx(sols[L - j].theta2, abs=1e-12)
            assert s.gap == pytest.approx(sols[L - j].gap, abs=1e-12)


@given(st.floats(0.02, PI / 2), st.integers(3, 120))
def test_exact_zeros_at_critical_times(th1, L):
    for s in quench.allowed_modes(1, 1, th1, L):
        if s.is_zero_mode:
            continue
        for t in quench.critical_times(s, 2):
            assert quench.loschmidt_echo(spec(s.theta2, L=L, theta1=th1), t)[1] <= 1e-12


# -- critical times -----------------------------------------------------------------


def _fake(gap):
    return quench.ZeroSolution(j=1, k=1.0, theta2=-0.1, gap=gap, t_first=PI / gap if gap else math.inf)


def test_critical_times_formula():
    assert quench.critical_times(_fake(2 * PI), 2) == pytest.approx([0.5, 1.5, 2.5])
    assert quench.critical_times(_fake(PI), 0) == pytest.approx([1.0])


def test_critical_times_l22():
    assert quench.critical_times(sol_j(22, 7), 0)[0] == pytest.approx(9.20605, abs=1e-5)


def test_critical_times_zero_gap():
    with pytest.raises(NoCriticalTimeError):
        quench.critical_times(_fake(0.0), 1)


# -- delta_c ------------------------------------------------------------------------


def test_delta_c_commensurate_is_zero():
    assert quench.delta_c(1, 1, TH1, 51) == 0.0


def test_delta_c_l49_near_theory():
    theory = 4 * PI**2 / (9 * math.sin(TH1) * 49**2)
    assert quench.delta_c(1, 1, TH1, 49) == pytest.approx(theory, rel=0.1)


def test_delta_c_empty():
    assert quench.delta_c(1, 1, TH1, 2) == math.inf


@pytest.mark.parametrize("th1,expected", [(TH1, 6.203e-4), (PI / 2, 4.386e-4)])
def test_delta_c_asymptote(th1, expected):
    assert quench.delta_c_asymptote(1, 1, th1, 100) == pytest.approx(expected, rel=1e-3)


def test_delta_c_asymptote_on_grid():
    assert quench.delta_c_asymptote(1, 1, TH1, 99) == 0.0


@pytest.mark.parametrize("L", [49, 50, 100, 101, 502, 1000])
def test_delta_c_asymptote_closed_form(L):
    assert quench.delta_c_asymptote(1, 1, TH1, L) == pytest.approx(
        4 * PI**2 / (9 * math.sin(TH1) * L**2), rel=1e-12
    )
