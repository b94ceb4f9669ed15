"""Brute-force reference: full 4x4 master equation integrated numerically.

Nothing here uses the closed-form kernels.  The generator is assembled by
applying the damping terms to each of the 16 matrix units, the delay
evolution is classic fixed-step RK4, and two-time correlations follow the
regression recipe: condition on the first photon, evolve, project.

Basis order is (i, alpha, beta, j).  Energies: omega_alpha = Delta, all others
0; the biexciton energy only contributes a phase that never reaches an
observable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .dynamics import CascadeState
from .polarization import PolarizerSetting
from .rates import RateParams

I, ALPHA, BETA, J = range(4)
DEFAULT_STEP_SCALE = 1e-3


class IntegrationError(RuntimeError):
    pass


def _unit(k: int, l: int) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[k, l] = 1.0
    return m


def _anti(a, b):
    return a @ b + b @ a


def master_rhs(params: RateParams, rho: np.ndarray) -> np.ndarray:
    """Homogeneous part of d rho / dt (the pump feed is added separately)."""
    p = params
    gamma = p.gamma1 + p.gamma3
    h = np.diag([0.0, p.delta, 0.0, 0.0]).astype(complex)
    s_ii, s_aa, s_bb, s_jj = (_unit(k, k) for k in (I, ALPHA, BETA, J))
    out = -1j * (h @ rho - rho @ h)
    out -= gamma * _anti(s_ii, rho)
    out -= (p.gamma2 + p.gamma_ba) * _anti(s_aa, rho)
    out -= (p.gamma4 + p.gamma_ab) * _anti(s_bb, rho)
    out += 2 * (p.gamma1 * rho[I, I] * s_aa + p.gamma3 * rho[I, I] * s_bb)
    out += 2 * (p.gamma2 * rho[ALPHA, ALPHA] + p.gamma4 * rho[BETA, BETA]) * s_jj
    out += 2 * (p.gamma_ba * rho[ALPHA, ALPHA] * s_bb + p.gamma_ab * rho[BETA, BETA] * s_aa)
    return out


@dataclass(frozen=True)
class Liouvillian:
    """Generator on row-major vectorized 4x4 matrices, plus the constant pump feed."""

    matrix: np.ndarray  # (16, 16)
    source: np.ndarray  # (16,)

    @classmethod
    def build(cls, params: RateParams) -> Liouvillian:
        cols = [master_rhs(params, _unit(k, l)).ravel() for k in range(4) for l in range(4)]
        source = (params.pump_rate * _unit(I, I)).ravel()
        return cls(np.array(cols).T, source)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return (self.matrix @ np.asarray(rho).ravel() + self.source).reshape(4, 4)

    @property
    def augmented(self) -> np.ndarray:
        """(17, 17) homogeneous form acting on [vec(rho), 1]."""
        m = np.zeros((17, 17), dtype=complex)
        m[:16, :16] = self.matrix
        m[:16, 16] = self.source
        return m

    def rate_scale(self) -> float:
        return float(np.max(np.sum(np.abs(self.matrix), axis=1)))


def default_step(liouvillian: Liouvillian) -> float:
    return DEFAULT_STEP_SCALE / max(liouvillian.rate_scale(), 1e-12)


def rk4_step(rhs, y, h):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    return y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_propagator(generator: np.ndarray, interval: float, max_step: float) -> np.ndarray:
    """Matrix advancing a linear system by ``interval`` with ceil(interval/max_step) RK4 steps.

    For a linear autonomous system one RK4 step is itself a fixed matrix;
    it is obtained by stepping every basis vector, then raised to the step
    count.
    """
    if interval == 0:
        return np.eye(generator.shape[0], dtype=complex)
    n = max(1, math.ceil(interval / max_step - 1e-9))
    h = interval / n
    one_step = rk4_step(lambda y: generator @ y, np.eye(generator.shape[0], dtype=complex), h)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.linalg.matrix_power(one_step, n)


def evolve_density(params: RateParams, rho0: np.ndarray, times, step: float | None = None) -> np.ndarray:
    """Density matrices at each of the non-decreasing ``times`` (starting from rho0 at 0)."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("times must be a non-negative, non-decreasing 1-d grid")
    if step is not None and not step > 0:
        raise ValueError("step must be positive")
    liou = Liouvillian.build(params)
    step = step or default_step(liou)
    gen = liou.augmented
    y = np.append(np.asarray(rho0, dtype=complex).ravel(), 1.0)
    cache: dict[float, np.ndarray] = {}
    out = np.empty((len(times), 4, 4), dtype=complex)
    previous = 0.0
    for n, t in enumerate(times):
        interval = float(t - previous)
        # uniform grids reuse one propagator; key on a rounded interval
        key = round(interval, 12)
        if key not in cache:
            cache[key] = rk4_propagator(gen, interval, step)
        with np.errstate(over="ignore", invalid="ignore"):
            y = cache[key] @ y
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite density matrix at t={t}")
        out[n] = y[:16].reshape(4, 4)
        previous = float(t)
    return out


def integrate(initial: CascadeState, params: RateParams, t: float, step: float | None = None) -> CascadeState:
    if t < 0:
        raise ValueError("t must be non-negative")
    rho = evolve_density(params, initial.matrix(), [t], step)[0]
    return CascadeState.from_matrix(rho, time=initial.time + t)


@dataclass(frozen=True)
class CollapseOperator:
    first_photon: np.ndarray
    second_photon: np.ndarray

    @classmethod
    def for_settings(cls, p1: PolarizerSetting, p2: PolarizerSetting) -> CollapseOperator:
        first = np.zeros((4, 4), dtype=complex)
        first[ALPHA, I] = math.cos(p1.theta)
        first[BETA, I] = np.exp(-1j * p1.phi) * math.sin(p1.theta)
        second = np.zeros((4, 4), dtype=complex)
        second[J, ALPHA] = math.cos(p2.theta)
        second[J, BETA] = np.exp(-1j * p2.phi) * math.sin(p2.theta)
        return cls(first, second)


def _raw_conditioned(params, p1, p2, tau, step=None):
    ops = CollapseOperator.for_settings(p1, p2)
    rho0 = _unit(I, I)
    sigma0 = ops.first_photon @ rho0 @ ops.first_photon.conj().T
    sigmas = evolve_density(replace(params, pump_rate=0.0), sigma0, tau, step)
    detector = ops.second_photon.conj().T @ ops.second_photon
    return np.real(np.einsum("kl,nlk->n", detector, sigmas))


@lru_cache(maxsize=1)
def calibration() -> float:
    """Scale mapping Tr[P2 sigma] onto the reduced correlation: (H, H, 0) -> 4."""
    h = PolarizerSetting(0.0, 0.0)
    return 4.0 / _raw_conditioned(RateParams(gamma1=0.5, gamma3=0.5), h, h, [0.0])[0]


def conditioned_states(params: RateParams, p1: PolarizerSetting, tau, step: float | None = None) -> np.ndarray:
    """Exciton-manifold state after a first photon through p1, at each delay (pump off)."""
    ops = CollapseOperator.for_settings(p1, p1)
    sigma0 = ops.first_photon @ _unit(I, I) @ ops.first_photon.conj().T
    return evolve_density(replace(params, pump_rate=0.0), sigma0, np.atleast_1d(tau), step)


def g2_conditioned(params: RateParams, p1: PolarizerSetting, p2: PolarizerSetting, tau, step: float | None = None):
    """Reduced correlation by conditioned-state evolution; ``tau`` scalar or grid."""
    scalar = np.ndim(tau) == 0
    values = calibration() * _raw_conditioned(params, p1, p2, np.atleast_1d(tau), step)
    return float(values[0]) if scalar else values
