import math

import numpy as np
from hypothesis import settings, strategies as st

from cascade_g2.polarization import PolarizerSetting
from cascade_g2.rates import RateParams

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

rate = st.floats(0.0, 10.0, allow_nan=False)
positive_rate = st.floats(0.05, 10.0, allow_nan=False)


@st.composite
def rate_params(draw, pump=False, positive_exciton=False):
    split = draw(st.floats(0.01, 1.0))
    exciton = positive_rate if positive_exciton else rate
    return RateParams(
        gamma1=split,
        gamma3=1.0 - split,
        gamma2=draw(exciton),
        gamma4=draw(exciton),
        gamma_ab=draw(rate),
        gamma_ba=draw(rate),
        delta=draw(st.floats(-20.0, 20.0)),
        pump_rate=draw(rate) if pump else 0.0,
    )


@st.composite
def symmetric_params(draw):
    g2 = draw(positive_rate)
    gd = draw(rate)
    return RateParams(0.5, 0.5, g2, g2, gd, gd, draw(st.floats(-20.0, 20.0)))


@st.composite
def settings_(draw):
    return PolarizerSetting(draw(st.floats(0.0, math.pi)), draw(st.floats(-math.pi, math.pi)))


def random_params(rng, n, pump=False):
    out = []
    for _ in range(n):
        split = rng.uniform(0.01, 1.0)
        r = rng.uniform(0.0, 10.0, 4)
        out.append(
            RateParams(split, 1.0 - split, *r, delta=rng.uniform(-20, 20), pump_rate=rng.uniform(0, 2) if pump else 0.0)
        )
    return out


def assert_close(a, b, tol):
    a, b = np.asarray(a), np.asarray(b)
    err = np.max(np.abs(a - b))
    assert err <= tol, f"max abs error {err:.3g} > {tol:.3g}"


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
