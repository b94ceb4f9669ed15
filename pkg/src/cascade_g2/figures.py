"""Parameter presets for the published figure sweeps, in units of gamma."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlation import degree_vs_angle, g2_general
from .polarization import preset
from .rates import RateParams

FIGURE_IDS = ("3a", "3b", "4a", "4b", "5")
SPLITTINGS = (0.0, 1.0, 2.0, 5.0, 10.0)
DEPHASINGS = (0.0, 0.5, 1.0, 5.0, 10.0)
LARGE_DELTA = 10.0
THETA_GRID = np.linspace(0.0, np.pi, 181)
TAU_GRID = np.linspace(0.0, 5.0, 501)


def cascade_params(delta: float = 0.0, dephasing: float = 0.0) -> RateParams:
    """Equal branches: gamma1 = gamma3 = 1/2, gamma2 = gamma4 = 1, equal dephasings."""
    return RateParams(
        gamma1=0.5, gamma3=0.5, gamma2=1.0, gamma4=1.0, gamma_ab=dephasing, gamma_ba=dephasing, delta=delta
    )


@dataclass(frozen=True)
class Curve:
    name: str
    header: tuple[str, str]
    x: np.ndarray
    y: np.ndarray


def _angle_curve(name, params):
    return Curve(name, ("theta", "c_avg"), THETA_GRID, degree_vs_angle(params, THETA_GRID))


def _circular_curves(prefix, dephasing):
    r, l = preset("R"), preset("L")
    out = []
    for delta in (0.0, LARGE_DELTA):
        params = cascade_params(delta, dephasing)
        for label, second in (("RR", r), ("RL", l)):
            out.append(
                Curve(f"{prefix}_{label}_delta_{delta:g}", ("tau", "value"), TAU_GRID, g2_general(params, r, second, TAU_GRID))
            )
    return out


def figure_curves(figure_id: str) -> list[Curve]:
    if figure_id == "3a":
        return [_angle_curve(f"fig3a_delta_{d:g}", cascade_params(d, 0.0)) for d in SPLITTINGS]
    if figure_id == "3b":
        return _circular_curves("fig3b", 0.0)
    if figure_id == "4a":
        return [_angle_curve(f"fig4a_gab_{g:g}", cascade_params(LARGE_DELTA, g)) for g in DEPHASINGS]
    if figure_id == "4b":
        return [_angle_curve(f"fig4b_gab_{g:g}", cascade_params(0.0, g)) for g in DEPHASINGS]
    if figure_id == "5":
        return _circular_curves("fig5", 10.0)
    raise ValueError(f"unknown figure id {figure_id!r}; valid ids: {', '.join(FIGURE_IDS)}")
