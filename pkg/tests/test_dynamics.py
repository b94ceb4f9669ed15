import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from cascade_g2 import dynamics as dyn
from cascade_g2.dynamics import CascadeState, evolve_analytic
from cascade_g2.oracle import evolve_density, integrate
from cascade_g2.rates import RateParams, derive

from conftest import random_params, rate_params

CASCADE = RateParams(0.5, 0.5, 1.0, 1.0)


def as_vector(s: CascadeState):
    return np.array([s.rho_ii, s.rho_aa, s.rho_bb, s.rho_jj, s.rho_ab.real, s.rho_ab.imag])


# --- kernels against direct quadrature -------------------------------------

@pytest.mark.parametrize("x", [-3.0, -1e-7, 0.0, 1e-9, 2e-6, 0.5, 40.0])
@pytest.mark.parametrize("t", [0.0, 0.3, 2.0])
def test_phi_matches_quadrature(x, t):
    expected, _ = quad(lambda s: math.exp(-x * s), 0, t, epsabs=1e-14, epsrel=1e-13)
    assert dyn.phi(x, t) == pytest.approx(expected, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("x", [-5.0, -1e-4, 0.0, 0.7, 30.0])
def test_moment_matches_quadrature(n, x):
    t = 1.7
    expected, _ = quad(lambda s: s**n * math.exp(-x * s), 0, t, epsabs=1e-14, epsrel=1e-13)
    assert dyn.moment(n, x, t) == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("lam0", [-1.5, 0.0, 2.0])
@pytest.mark.parametrize("a", [0.0, 1e-5, 0.4, 3.0])
def test_mixed_phi_matches_quadrature(lam0, a):
    t = 1.3

    def integrand(s):
        return math.exp(-lam0 * s) * (math.sinh(a * s) / a if a else s)

    expected, _ = quad(integrand, 0, t, epsabs=1e-14, epsrel=1e-13)
    assert dyn.mixed_phi(lam0, a, t) == pytest.approx(expected, rel=1e-11)


@given(st.floats(1e-3, 5), st.one_of(st.just(0.0), st.floats(1e-6, 1)), st.floats(1e-6, 10))
def test_exp_sinhc_cosh_match_naive(a0, frac, t):
    a = frac * a0
    naive_ch = math.exp(-a0 * t) * math.cosh(a * t)
    naive_sh = math.exp(-a0 * t) * (math.sinh(a * t) / a if a else t)
    assert dyn.exp_cosh(a0, a, t) == pytest.approx(naive_ch, rel=1e-12, abs=1e-300)
    assert dyn.exp_sinhc(a0, a, t) == pytest.approx(naive_sh, rel=1e-12, abs=1e-300)


def test_exp_sinhc_no_overflow():
    assert dyn.exp_sinhc(1000.0, 999.0, 5.0) == pytest.approx(math.exp(-5) * (1 - math.exp(-9990)) / 1998)


def test_a_to_zero_branch_agrees_with_generic():
    t = np.linspace(0.01, 10, 50)
    for lam0 in (2.0, 0.0, -0.5):
        series = dyn.mixed_phi(lam0, 1e-8, t, branch="series")
        generic = dyn.mixed_phi(lam0, 1e-8, t, branch="generic")
        # the generic quotient loses ~eps/(A t) relative; compare on an absolute-or-relative scale
        assert np.all(np.abs(generic - series) <= 1e-6 * np.maximum(1.0, np.abs(series)))
        exact_limit = dyn.moment(1, lam0, t)
        np.testing.assert_allclose(series, exact_limit, rtol=1e-12)


@pytest.mark.parametrize("t", [0.25, 1.0, 3.0])
def test_resonant_branch_two_sided(t):
    """D-shape kernel at lam0 - A = 0 against finite offsets of the denominator."""
    direct, mixing, a = 0.5, 0.3, 0.4
    at = dyn._feeding(direct, mixing, a, a, t)
    plus = dyn._feeding(direct, mixing, a + 1e-6, a, t)
    minus = dyn._feeding(direct, mixing, a - 1e-6, a, t)
    assert abs(at - 0.5 * (plus + minus)) < 1e-6
    if t <= 1.0:
        assert abs(at - plus) < 1e-6 and abs(at - minus) < 1e-6


# --- feeding coefficients --------------------------------------------------

@pytest.mark.parametrize("coef", [dyn.coefficient_c, dyn.coefficient_d, dyn.coefficient_f, dyn.coefficient_k])
def test_coefficients_vanish_at_zero(coef):
    assert coef(RateParams(0.3, 0.7, 1.1, 0.4, 0.2, 0.6, 1.0), 0.0) == 0.0


def test_c_steady_state_against_oracle():
    p = RateParams(0.5, 0.5, 1.0, 1.0, pump_rate=0.8)
    rho = evolve_density(p, np.diag([0, 0, 0, 1.0]).astype(complex), [60.0])[0]
    c_inf_oracle = rho[1, 1].real * 2 * derive(p).gamma / p.pump_rate
    assert c_inf_oracle == pytest.approx(0.5, abs=1e-9)
    assert dyn.coefficient_c(p, 60.0) == pytest.approx(0.5, abs=1e-12)


def test_coefficients_against_printed_form_generic():
    p = RateParams(0.3, 0.7, 1.1, 0.4, 0.2, 0.6, 1.0)
    d = derive(p)
    t = 0.9

    def printed(w1, w3, gmix, lam0, sign):
        def half(a):
            coef = 2 * w1 * (1 + sign * d.gamma_a / a) + 4 * w3 * gmix / a
            return coef * (1 - math.exp(-(lam0 - a) * t)) / (2 * (lam0 - a))

        return half(d.a_mix) + half(-d.a_mix)

    assert dyn.coefficient_c(p, t) == pytest.approx(printed(p.gamma1, p.gamma3, p.gamma_ab, d.a0, 1), rel=1e-12)
    assert dyn.coefficient_d(p, t) == pytest.approx(
        printed(p.gamma1, p.gamma3, p.gamma_ab, d.a0 - 2 * d.gamma, 1), rel=1e-12
    )
    assert dyn.coefficient_f(p, t) == pytest.approx(printed(p.gamma3, p.gamma1, p.gamma_ba, d.a0, -1), rel=1e-12)
    assert dyn.coefficient_k(p, t) == pytest.approx(
        printed(p.gamma3, p.gamma1, p.gamma_ba, d.a0 - 2 * d.gamma, -1), rel=1e-12
    )


# --- evolution ---------------------------------------------------------------

def test_zero_time_is_identity():
    s = CascadeState(0.4, 0.3, 0.2, 0.1, 0.05j, time=2.0)
    assert evolve_analytic(s, CASCADE, 0.0) == s


def test_pure_biexciton_decay():
    s = evolve_analytic(CascadeState.biexciton(), CASCADE, 1.0)
    assert s.rho_ii == pytest.approx(math.exp(-2), abs=1e-15)


def test_double_degenerate_limit():
    # a0 - 2 gamma = 0 and A = 0 together: rho_aa solves x' = -2x + exp(-2t)
    s = evolve_analytic(CascadeState.biexciton(), CASCADE, 1.0)
    o = integrate(CascadeState.biexciton(), CASCADE, 1.0)
    assert s.rho_aa == pytest.approx(math.exp(-2), abs=1e-12)
    assert o.rho_aa == pytest.approx(math.exp(-2), abs=1e-10)


def test_matches_oracle_on_random_draws():
    rng = np.random.default_rng(7)
    worst = 0.0
    for p in random_params(rng, 200):
        t = np.linspace(0.0, 20.0, 11)
        start = CascadeState(
            rho_ii=0.6, rho_aa=0.2, rho_bb=0.15, rho_jj=0.05, rho_ab=0.05 * np.exp(1j * rng.uniform(0, 6.28))
        )
        rhos = evolve_density(p, start.matrix(), t)
        for tk, rho in zip(t, rhos):
            analytic = as_vector(evolve_analytic(start, p, float(tk)))
            worst = max(worst, np.max(np.abs(analytic - as_vector(CascadeState.from_matrix(rho)))))
    assert worst < 1e-8


def test_matches_oracle_with_pump():
    rng = np.random.default_rng(3)
    for p in random_params(rng, 30, pump=True):
        for t in (0.5, 3.0, 12.0):
            a = evolve_analytic(CascadeState.biexciton(), p, t)
            o = integrate(CascadeState.biexciton(), p, t)
            assert np.max(np.abs(as_vector(a) - as_vector(o))) < 1e-8
            assert a.trace == pytest.approx(1 + p.pump_rate * t, abs=1e-9)
            assert o.trace == pytest.approx(1 + p.pump_rate * t, abs=1e-9)


@given(rate_params(pump=True), st.floats(0, 5), st.floats(0, 5))
def test_semigroup(p, t1, t2):
    s0 = CascadeState(0.5, 0.2, 0.2, 0.1, 0.1 + 0.05j)
    two_step = evolve_analytic(evolve_analytic(s0, p, t1), p, t2)
    one_step = evolve_analytic(s0, p, t1 + t2)
    assert np.max(np.abs(as_vector(two_step) - as_vector(one_step))) < 1e-9


@given(rate_params(), st.floats(0, 20))
def test_physical_state_without_pump(p, t):
    s = evolve_analytic(CascadeState.biexciton(), p, t)
    assert s.trace == pytest.approx(1.0, abs=1e-9)
    s.check()


def test_coherence_rotates_and_decays():
    p = RateParams(0.5, 0.5, 1, 1, 1, 1, delta=3.0)
    s = evolve_analytic(CascadeState(0, 0.5, 0.5, 0, 0.5), p, 0.5)
    assert s.rho_ab == pytest.approx(0.5 * np.exp(-(4 + 3j) * 0.5), abs=1e-15)


def test_trajectory_times():
    states = dyn.trajectory(CASCADE, [0.0, 0.5, 1.0])
    assert [s.time for s in states] == [0.0, 0.5, 1.0]
    assert states[0] == CascadeState.biexciton()
