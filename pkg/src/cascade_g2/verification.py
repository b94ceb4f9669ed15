"""Random-grid comparison of the closed-form correlation against the oracle."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .correlation import g2_general
from .oracle import g2_conditioned
from .polarization import PolarizerSetting
from .rates import RateParams


@dataclass(frozen=True)
class Case:
    params: RateParams
    p1: PolarizerSetting
    p2: PolarizerSetting


def random_cases(n: int, seed: int = 0, max_rate: float = 10.0, max_delta: float = 20.0) -> list[Case]:
    """Rates uniform in (0, max_rate], gamma1 + gamma3 = 1, delta uniform in [0, max_delta]."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n):
        split = 1.0 - rng.random()  # (0, 1]
        r = max_rate * (1.0 - rng.random(4))
        params = RateParams(
            gamma1=split,
            gamma3=1.0 - split,
            gamma2=r[0],
            gamma4=r[1],
            gamma_ab=r[2],
            gamma_ba=r[3],
            delta=max_delta * rng.random(),
        )
        angles = rng.uniform([0, -np.pi, 0, -np.pi], [np.pi, np.pi, np.pi, np.pi])
        cases.append(Case(params, PolarizerSetting(*angles[:2]), PolarizerSetting(*angles[2:])))
    return cases


def case_error(case: Case, tau: np.ndarray) -> float:
    """Max |analytic - oracle| over the grid, relative to the grid maximum of the analytic curve."""
    analytic = g2_general(case.params, case.p1, case.p2, tau)
    oracle = g2_conditioned(case.params, case.p1, case.p2, tau)
    scale = np.max(np.abs(analytic))
    return float(np.max(np.abs(analytic - oracle)) / scale) if scale > 0 else float(np.max(np.abs(oracle)))


def equivalence_report(
    cases: int = 200,
    seed: int = 0,
    points: int = 50,
    tau_max: float = 10.0,
    tolerance: float = 1e-6,
    jobs: int = 1,
) -> dict:
    tau = np.linspace(0.0, tau_max, points)
    drawn = random_cases(cases, seed)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        errors = list(pool.map(lambda c: case_error(c, tau), drawn))
    rows = [
        {
            "case": k,
            "params": c.params.to_dict(),
            "p1": [c.p1.theta, c.p1.phi],
            "p2": [c.p2.theta, c.p2.phi],
            "max_rel_error": err,
            "passed": err < tolerance,
        }
        for k, (c, err) in enumerate(zip(drawn, errors))
    ]
    return {
        "grid": {
            "cases": cases,
            "seed": seed,
            "tau": {"start": 0.0, "stop": tau_max, "points": points},
            "rates": "uniform (0, 10] in units of gamma; delta uniform [0, 20]",
        },
        "tolerance": tolerance,
        "max_rel_error": max(errors) if errors else 0.0,
        "passed": all(r["passed"] for r in rows),
        "cases": rows,
    }
