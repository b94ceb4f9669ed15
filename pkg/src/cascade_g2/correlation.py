"""Polarization-resolved two-photon intensity correlations of the cascade.

The first photon (biexciton -> exciton) is detected at delay 0 through an
analyzer p1, the second (exciton -> ground) at delay tau through p2.  All
correlation values here are *reduced*: the geometric/dipole prefactor is
dropped unless an :class:`EmissionPrefactor` is supplied explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import population_kernels
from .polarization import BasisPair, PolarizerSetting
from .rates import RateParams, derive


class AsymmetricParamsError(ValueError):
    pass


@dataclass(frozen=True)
class CorrelationKernel:
    f1: np.ndarray
    f2: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    u: np.ndarray
    tau: np.ndarray


@dataclass(frozen=True)
class EmissionPrefactor:
    """(omega0/c)^8 d1^2 d2^2 rho_ii(t) / (4 r^4) with c = 1.

    d1 is the biexciton->exciton dipole, d2 the exciton->ground dipole.
    """

    omega0: float
    r: float
    d1: float
    d2: float
    rho_ii_t: float = 1.0

    def __post_init__(self):
        for name in ("omega0", "r", "d1", "d2", "rho_ii_t"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def value(self) -> float:
        return self.omega0**8 * self.d1**2 * self.d2**2 * self.rho_ii_t / (4.0 * self.r**4)


@dataclass(frozen=True)
class G2Curve:
    tau: np.ndarray
    value: np.ndarray
    settings_1: PolarizerSetting
    settings_2: PolarizerSetting
    reduced: bool = True

    def __post_init__(self):
        if np.any(np.asarray(self.value) < -1e-9):
            raise ValueError("negative coincidence rate")


def kernels(params: RateParams, tau) -> CorrelationKernel:
    """f1, f2, w1, w2 and u at delay ``tau`` (scalar or array)."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValueError("tau must be non-negative")
    d = derive(params)
    f1, f2, w1, w2 = population_kernels(params, tau)
    u = np.exp(-(d.a0 - 1j * params.delta) * tau)
    return CorrelationKernel(f1=f1, f2=f2, w1=w1, w2=w2, u=u, tau=tau)


def _braces(f1, f2, w1, w2, u, p1: PolarizerSetting, p2: PolarizerSetting):
    c1, c2 = math.cos(2 * p1.theta), math.cos(2 * p2.theta)
    s1, s2 = math.sin(2 * p1.theta), math.sin(2 * p2.theta)
    phase = np.exp(-1j * (p1.phi + p2.phi))
    return (
        f1 + w1 + f2 + w2
        + (c1 + c2) * (f1 - w2)
        + (c1 - c2) * (w1 - f2)
        + c1 * c2 * (f1 + w2 - f2 - w1)
        + s1 * s2 * 2.0 * np.real(phase * u)
    )


def g2_general(
    params: RateParams,
    p1: PolarizerSetting,
    p2: PolarizerSetting,
    tau,
    prefactor: EmissionPrefactor | None = None,
):
    """Coincidence rate for analyzers p1 (first photon) and p2 (second photon).

    With no prefactor this is the bare braces content, which is 4 at
    (H, H, tau=0) and 4 * Tr[P2 sigma(tau)] in terms of the conditioned state.
    """
    k = kernels(params, tau)
    out = _braces(k.f1, k.f2, k.w1, k.w2, k.u, p1, p2)
    if prefactor is not None:
        out = prefactor.value * out
    return out if np.ndim(out) else float(out)


def g2_curve(params, p1, p2, tau, prefactor=None) -> G2Curve:
    tau = np.asarray(tau, dtype=float)
    return G2Curve(tau, np.asarray(g2_general(params, p1, p2, tau, prefactor)), p1, p2, prefactor is None)


def g2_symmetric(params: RateParams, theta1: float, theta2: float, tau):
    """Linear-analyzer correlation for equal exciton rates and dephasings.

    Normalized so that ``g2_general == 2 * g2_symmetric``.
    """
    if not params.is_symmetric:
        raise AsymmetricParamsError(
            "g2_symmetric needs gamma2 == gamma4 and gamma_ab == gamma_ba; use g2_general instead"
        )
    tau = np.asarray(tau, dtype=float)
    g2, gd = params.gamma2, params.gamma_ab
    out = (
        np.exp(-2 * g2 * tau)
        + math.cos(2 * theta1) * math.cos(2 * theta2) * np.exp(-2 * (g2 + 2 * gd) * tau)
        + math.sin(2 * theta1) * math.sin(2 * theta2) * np.exp(-2 * (g2 + gd) * tau) * np.cos(params.delta * tau)
    )
    return out if np.ndim(out) else float(out)


def contrast(g_co, g_cross):
    """(co - cross) / (co + cross), and a mask of points where both vanish (set to 0)."""
    g_co = np.asarray(g_co, dtype=float)
    g_cross = np.asarray(g_cross, dtype=float)
    total = g_co + g_cross
    undefined = total <= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        c = np.where(undefined, 0.0, (g_co - g_cross) / np.where(undefined, 1.0, total))
    return np.clip(c, -1.0, 1.0), undefined


def degree_of_correlation(params: RateParams, basis: BasisPair, tau, with_flag: bool = False):
    """c(tau) in the basis: co-polarized = same setting in both arms."""
    p = basis.primary_setting
    g_co = g2_general(params, p, p, tau)
    g_cross = g2_general(params, p, basis.orthogonal_setting, tau)
    c, undefined = contrast(g_co, g_cross)
    c = c if c.ndim else float(c)
    if with_flag:
        return c, undefined if undefined.ndim else bool(undefined)
    return c


def integrated_g2(params: RateParams, p1: PolarizerSetting, p2: PolarizerSetting) -> float:
    """Integral of g2_general over tau in [0, inf), in closed form."""
    if params.gamma2 <= 0 or params.gamma4 <= 0:
        raise ValueError("time average needs gamma2 > 0 and gamma4 > 0 (otherwise the tail does not decay)")
    d = derive(params)
    # integrals of exp(-a0 t) cosh(A t) and exp(-a0 t) sinh(A t)/A over [0, inf)
    ch = d.a0 / d.gap_sq
    sh = 1.0 / d.gap_sq
    f1 = ch + d.gamma_a * sh
    w2 = ch - d.gamma_a * sh
    f2 = 2.0 * params.gamma_ab * sh
    w1 = 2.0 * params.gamma_ba * sh
    u = 1.0 / (d.a0 - 1j * params.delta)
    return float(_braces(f1, f2, w1, w2, u, p1, p2))


def degree_time_averaged(params: RateParams, basis: BasisPair) -> float:
    """Contrast of the tau-integrated co- and cross-polarized coincidence rates."""
    p = basis.primary_setting
    c, _ = contrast(integrated_g2(params, p, p), integrated_g2(params, p, basis.orthogonal_setting))
    return float(c)


def degree_vs_angle(params: RateParams, thetas, phi: float = 0.0) -> np.ndarray:
    """Time-averaged degree for the bases (theta, phi) / orthogonal, one per theta."""
    return np.array(
        [degree_time_averaged(params, BasisPair.from_setting(PolarizerSetting(t, phi))) for t in thetas]
    )
