"""Analyzer settings (theta, phi) and the linear-to-elliptical basis change.

A setting maps to the Jones vector (cos theta, exp(-i phi) sin theta) in the
(H, V) basis; its orthogonal partner is the second row of the unitary
[[c, e^{-i phi} s], [-e^{i phi} s, c]].  Two settings are equal when they
describe the same rank-1 projector; the global phase of the vector is ignored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_ANGLE_TOL = 1e-12


def _wrap_phi(phi: float) -> float:
    """Reduce to (-pi, pi]."""
    phi = math.remainder(phi, 2 * math.pi)
    return math.pi if phi <= -math.pi + _ANGLE_TOL else phi


def canonicalize(theta: float, phi: float) -> tuple[float, float]:
    """Unique (theta, phi) for the projector of the Jones vector.

    theta lands in [0, pi) and phi in [-pi/2, pi/2]; on the circular edge
    |phi| = pi/2 theta is taken in [0, pi/2].  phi is 0 whenever the state is
    purely H or V.
    """
    theta = math.fmod(theta, math.pi)
    if theta < 0:
        theta += math.pi
    if theta >= math.pi - _ANGLE_TOL:
        theta = 0.0
    phi = _wrap_phi(phi)
    if abs(math.sin(theta)) < _ANGLE_TOL or abs(math.cos(theta)) < _ANGLE_TOL:
        return theta, 0.0
    # (theta, phi) and (pi - theta, phi + pi) are the same projector
    if abs(phi) > math.pi / 2 + _ANGLE_TOL:
        theta = math.pi - theta
        phi = _wrap_phi(phi + math.pi)
    if abs(abs(phi) - math.pi / 2) <= _ANGLE_TOL and theta > math.pi / 2:
        theta = math.pi - theta
        phi = -phi
    return theta, phi


@dataclass(frozen=True, eq=False)
class PolarizerSetting:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = canonicalize(float(self.theta), float(self.phi))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def __eq__(self, other):
        if not isinstance(other, PolarizerSetting):
            return NotImplemented
        return same_polarization(self, other)

    __hash__ = None

    def __repr__(self):
        return f"PolarizerSetting(theta={self.theta:.6g}, phi={self.phi:.6g})"


def jones_vector(setting: PolarizerSetting) -> np.ndarray:
    """(h, v) amplitudes, unit norm."""
    return np.array(
        [math.cos(setting.theta), np.exp(-1j * setting.phi) * math.sin(setting.theta)]
    )


def basis_matrix(setting: PolarizerSetting) -> np.ndarray:
    """Unitary whose rows are the setting and its orthogonal partner."""
    c, s = math.cos(setting.theta), math.sin(setting.theta)
    e = np.exp(-1j * setting.phi)
    return np.array([[c, e * s], [-np.conj(e) * s, c]])


def projector(setting: PolarizerSetting) -> np.ndarray:
    v = jones_vector(setting)
    return np.outer(v, v.conj())


def same_polarization(a: PolarizerSetting, b: PolarizerSetting, tol: float = 1e-9) -> bool:
    return bool(np.max(np.abs(projector(a) - projector(b))) <= tol)


def orthogonal(setting: PolarizerSetting) -> PolarizerSetting:
    # second matrix row equals (theta + pi/2, phi) times the global phase -e^{i phi}
    return PolarizerSetting(setting.theta + math.pi / 2, setting.phi)


PRESETS = {
    "H": (0.0, 0.0),
    "V": (math.pi / 2, 0.0),
    "D": (math.pi / 4, 0.0),
    "Dprime": (3 * math.pi / 4, 0.0),
    "R": (math.pi / 4, -math.pi / 2),
    "L": (math.pi / 4, math.pi / 2),
}


def preset(name: str) -> PolarizerSetting:
    try:
        return PolarizerSetting(*PRESETS[name])
    except KeyError:
        raise ValueError(f"unknown polarization preset {name!r}; valid names: {', '.join(PRESETS)}") from None


@dataclass(frozen=True)
class BasisPair:
    primary_setting: PolarizerSetting
    orthogonal_setting: PolarizerSetting

    def __post_init__(self):
        overlap = abs(np.vdot(jones_vector(self.orthogonal_setting), jones_vector(self.primary_setting)))
        if overlap >= 1e-12:
            raise ValueError(f"basis settings are not orthogonal (|<e2|e1>| = {overlap:.3g})")

    @classmethod
    def from_setting(cls, setting: PolarizerSetting) -> BasisPair:
        return cls(setting, orthogonal(setting))

    @classmethod
    def named(cls, name: str) -> BasisPair:
        """'rectilinear', 'diagonal' or 'circular', or any preset name."""
        aliases = {"rectilinear": "H", "linear": "H", "diagonal": "D", "circular": "R"}
        return cls.from_setting(preset(aliases.get(name, name)))


def parse_setting(text: str) -> PolarizerSetting:
    """Preset name, ``"theta,phi"`` in radians, or ``"deg:theta,phi"``."""
    text = text.strip()
    if text in PRESETS:
        return preset(text)
    degrees = text.startswith("deg:")
    body = text[4:] if degrees else text
    parts = [p for p in body.split(",")]
    if not 1 <= len(parts) <= 2:
        raise ValueError(f"cannot parse polarization {text!r}: expected a preset or 'theta,phi'")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ValueError(
            f"cannot parse polarization {text!r}; valid presets: {', '.join(PRESETS)}"
        ) from None
    if degrees:
        values = [math.radians(v) for v in values]
    return PolarizerSetting(*values)
