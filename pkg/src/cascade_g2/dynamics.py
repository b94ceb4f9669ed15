"""Closed-form single-time solution of the cascade master equation.

Populations relax through the 2x2 exciton block whose eigenrates are
a0 -/+ A; feeding from the biexciton enters through the time-dependent
coefficients C, D (into |alpha>) and F, K (into |beta>).  Every quotient that
can become 0/0 (A -> 0, resonant denominators a0 -/+ A - 2 gamma -> 0) goes
through one of the kernels below, each with an explicit limiting branch.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import hyp1f1

from .rates import RateParams, derive

# below these |x t| the kernels switch to their Taylor branches
PHI_SERIES_BELOW = 1e-6
MIX_SERIES_BELOW = 1e-3


def phi(x, t):
    """(1 - exp(-x t)) / x, with the x -> 0 limit t.  Any real x."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    z = x * t
    small = np.abs(z) < PHI_SERIES_BELOW
    with np.errstate(divide="ignore", invalid="ignore"):
        generic = -np.expm1(-z) / np.where(small, 1.0, x)
    series = t * (1.0 - z / 2.0 + z * z / 6.0)
    out = np.where(small, series, generic)
    return out if out.ndim else float(out)


def moment(n: int, x, t):
    """Integral of s**n exp(-x s) over [0, t], any real x."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return t ** (n + 1) * hyp1f1(n + 1, n + 2, -x * t) / (n + 1)


def exp_sinhc(a0, a_mix, t):
    """exp(-a0 t) sinh(A t) / A, limit exp(-a0 t) t as A -> 0; no overflow."""
    return np.exp(-(a0 - a_mix) * np.asarray(t, dtype=float)) * phi(2.0 * a_mix, t)


def exp_cosh(a0, a_mix, t):
    """exp(-a0 t) cosh(A t) as a half-sum of the two decaying exponentials."""
    t = np.asarray(t, dtype=float)
    return 0.5 * (np.exp(-(a0 - a_mix) * t) + np.exp(-(a0 + a_mix) * t))


def mixed_phi(lam0, a_mix, t, branch: str = "auto"):
    """[phi(lam0 - A, t) - phi(lam0 + A, t)] / (2 A).

    Equals the integral of exp(-lam0 s) sinh(A s)/A over [0, t].  The
    difference quotient cancels catastrophically for small A t, where the
    series in A**2 (moments of s**1, s**3, s**5) takes over.
    """
    t = np.asarray(t, dtype=float)
    if branch not in ("auto", "generic", "series"):
        raise ValueError(f"unknown branch {branch!r}")
    if branch == "generic" and a_mix == 0:
        raise ValueError("generic branch is undefined at A = 0")
    a2 = a_mix * a_mix
    series = moment(1, lam0, t) + a2 * moment(3, lam0, t) / 6.0 + a2 * a2 * moment(5, lam0, t) / 120.0
    if branch == "series":
        return series
    if a_mix == 0:
        return series
    generic = (phi(lam0 - a_mix, t) - phi(lam0 + a_mix, t)) / (2.0 * a_mix)
    if branch == "generic":
        return generic
    out = np.where(a_mix * t < MIX_SERIES_BELOW, series, generic)
    return out if out.ndim else float(out)


def _feeding(direct: float, mixing: float, lam0: float, a_mix: float, t, branch="auto"):
    """Generic C/D/F/K shape.

    The printed form is (2 g (1 +/- Ga/A) + 4 g' gab / A) (1 - e^{-(lam0-A) t}) / (2 (lam0-A))
    plus the same with A -> -A; splitting the A-odd part off gives
    direct * (phi(lam0-A) + phi(lam0+A)) + 2 * mixing * mixed_phi.
    """
    return direct * (phi(lam0 - a_mix, t) + phi(lam0 + a_mix, t)) + 2.0 * mixing * mixed_phi(
        lam0, a_mix, t, branch
    )


def _c_weights(params: RateParams):
    d = derive(params)
    return params.gamma1, params.gamma1 * d.gamma_a + 2.0 * params.gamma3 * params.gamma_ab


def _f_weights(params: RateParams):
    d = derive(params)
    return params.gamma3, 2.0 * params.gamma1 * params.gamma_ba - params.gamma3 * d.gamma_a


def coefficient_c(params: RateParams, t, branch="auto"):
    d = derive(params)
    return _feeding(*_c_weights(params), d.a0, d.a_mix, t, branch)


def coefficient_d(params: RateParams, t, branch="auto"):
    d = derive(params)
    return _feeding(*_c_weights(params), d.a0 - 2.0 * d.gamma, d.a_mix, t, branch)


def coefficient_f(params: RateParams, t, branch="auto"):
    d = derive(params)
    return _feeding(*_f_weights(params), d.a0, d.a_mix, t, branch)


def coefficient_k(params: RateParams, t, branch="auto"):
    d = derive(params)
    return _feeding(*_f_weights(params), d.a0 - 2.0 * d.gamma, d.a_mix, t, branch)


def population_kernels(params: RateParams, t):
    """(f1, f2, w1, w2): how exciton populations at 0 map to populations at t.

    rho_aa(t) = f1 rho_aa(0) + f2 rho_bb(0), rho_bb(t) = w1 rho_aa(0) + w2 rho_bb(0)
    in the absence of feeding.
    """
    d = derive(params)
    ch = exp_cosh(d.a0, d.a_mix, t)
    sh = exp_sinhc(d.a0, d.a_mix, t)
    f1 = ch + d.gamma_a * sh
    f2 = 2.0 * params.gamma_ab * sh
    w1 = 2.0 * params.gamma_ba * sh
    w2 = ch - d.gamma_a * sh
    return f1, f2, w1, w2


@dataclass(frozen=True)
class CascadeState:
    """Populations and the exciton coherence rho_ab = <alpha|rho|beta> at ``time``."""

    rho_ii: float
    rho_aa: float = 0.0
    rho_bb: float = 0.0
    rho_jj: float = 0.0
    rho_ab: complex = 0j
    time: float = 0.0

    @classmethod
    def biexciton(cls) -> CascadeState:
        """All population in |i>, the pulsed-excitation starting point."""
        return cls(rho_ii=1.0)

    @property
    def trace(self) -> float:
        return self.rho_ii + self.rho_aa + self.rho_bb + self.rho_jj

    def p_i(self, params: RateParams) -> float:
        return self.rho_ii - params.pump_rate / (2.0 * derive(params).gamma)

    def matrix(self) -> np.ndarray:
        """4x4 density matrix in the (i, alpha, beta, j) order."""
        rho = np.diag([self.rho_ii, self.rho_aa, self.rho_bb, self.rho_jj]).astype(complex)
        rho[1, 2] = self.rho_ab
        rho[2, 1] = np.conj(self.rho_ab)
        return rho

    @classmethod
    def from_matrix(cls, rho: np.ndarray, time: float = 0.0) -> CascadeState:
        rho = np.asarray(rho)
        return cls(
            rho_ii=float(rho[0, 0].real),
            rho_aa=float(rho[1, 1].real),
            rho_bb=float(rho[2, 2].real),
            rho_jj=float(rho[3, 3].real),
            rho_ab=complex(rho[1, 2]),
            time=time,
        )

    def check(self, tol: float = 1e-9) -> None:
        pops = (self.rho_ii, self.rho_aa, self.rho_bb, self.rho_jj)
        if min(pops) < -1e-12:
            raise ValueError(f"negative population in {self}")
        if abs(self.rho_ab) ** 2 > self.rho_aa * self.rho_bb + tol:
            raise ValueError(f"exciton block not positive in {self}")


def evolve_analytic(initial: CascadeState, params: RateParams, t: float) -> CascadeState:
    """State after a further time ``t`` from the closed-form solution."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if t == 0:
        return initial
    d = derive(params)
    feed = params.pump_rate / (2.0 * d.gamma)
    p_i0 = initial.rho_ii - feed
    decay = np.exp(-2.0 * d.gamma * t)
    f1, f2, w1, w2 = population_kernels(params, t)

    rho_ii = feed + decay * p_i0
    rho_aa = (
        f1 * initial.rho_aa
        + f2 * initial.rho_bb
        + feed * coefficient_c(params, t)
        + p_i0 * decay * coefficient_d(params, t)
    )
    rho_bb = (
        w2 * initial.rho_bb
        + w1 * initial.rho_aa
        + feed * coefficient_f(params, t)
        + p_i0 * decay * coefficient_k(params, t)
    )
    # <alpha|rho|beta> rotates as exp(-i Delta t) for omega_alpha - omega_beta = Delta
    rho_ab = np.exp(-(d.a0 + 1j * params.delta) * t) * initial.rho_ab
    rho_jj = initial.trace + params.pump_rate * t - rho_ii - rho_aa - rho_bb
    return CascadeState(
        rho_ii=float(rho_ii),
        rho_aa=float(rho_aa),
        rho_bb=float(rho_bb),
        rho_jj=float(rho_jj),
        rho_ab=complex(rho_ab),
        time=initial.time + t,
    )


def trajectory(params: RateParams, times, initial: CascadeState | None = None) -> list[CascadeState]:
    initial = initial or CascadeState.biexciton()
    return [evolve_analytic(initial, params, float(t)) for t in times]
