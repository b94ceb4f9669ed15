"""Physical rate parameters of the four-level cascade and the composite rates
derived from them.

Levels: |i> biexciton, |alpha> (H branch) and |beta> (V branch) excitons,
|j> ground state.  All rates are plain floats in a caller-chosen time unit.
"""
from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path


class ValidationError(ValueError):
    """Raised when a parameter set violates its invariants."""


RATE_FIELDS = ("gamma1", "gamma3", "gamma2", "gamma4", "gamma_ab", "gamma_ba", "pump_rate")
PARAM_KEYS = RATE_FIELDS[:6] + ("delta", "pump_rate")


@dataclass(frozen=True)
class RateParams:
    gamma1: float
    gamma3: float
    gamma2: float = 0.0
    gamma4: float = 0.0
    gamma_ab: float = 0.0
    gamma_ba: float = 0.0
    delta: float = 0.0
    pump_rate: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValidationError(f"{f.name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ValidationError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, value)
        for name in RATE_FIELDS:
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be non-negative, got {getattr(self, name)!r}")
        if self.gamma1 + self.gamma3 <= 0:
            raise ValidationError("gamma1 + gamma3 must be positive (the biexciton must decay)")

    @property
    def is_symmetric(self) -> bool:
        """Equal exciton decay rates and equal dephasing rates."""
        return self.gamma2 == self.gamma4 and self.gamma_ab == self.gamma_ba

    def scaled(self, factor: float) -> RateParams:
        """Every rate (and the splitting) multiplied by ``factor``."""
        if not factor > 0:
            raise ValidationError(f"scale factor must be positive, got {factor!r}")
        return RateParams(**{name: getattr(self, name) * factor for name in PARAM_KEYS})

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in PARAM_KEYS}

    @classmethod
    def from_dict(cls, data: dict) -> RateParams:
        unknown = set(data) - set(PARAM_KEYS)
        if unknown:
            raise ValidationError(f"unknown parameter keys: {sorted(unknown)}; valid keys are {list(PARAM_KEYS)}")
        missing = [k for k in ("gamma1", "gamma3") if k not in data]
        if missing:
            raise ValidationError(f"missing required parameter keys: {missing}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> RateParams:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None
        if not isinstance(data, dict):
            raise ValidationError(f"{path}: expected a JSON object of parameters")
        return cls.from_dict(data)


@dataclass(frozen=True)
class DerivedRates:
    gamma: float
    a0: float
    gamma_a: float
    a_mix: float
    # a0**2 - a_mix**2, kept separately since the difference cancels badly
    gap_sq: float


def derive(params: RateParams) -> DerivedRates:
    p = params
    gamma_a = p.gamma4 - p.gamma2 + p.gamma_ab - p.gamma_ba
    return DerivedRates(
        gamma=p.gamma1 + p.gamma3,
        a0=p.gamma2 + p.gamma4 + p.gamma_ab + p.gamma_ba,
        gamma_a=gamma_a,
        a_mix=math.sqrt(gamma_a**2 + 4.0 * p.gamma_ab * p.gamma_ba),
        gap_sq=4.0 * (p.gamma2 * p.gamma4 + p.gamma2 * p.gamma_ab + p.gamma4 * p.gamma_ba),
    )


def normalize_to_gamma(params: RateParams) -> RateParams:
    """Rescale so that gamma1 + gamma3 == 1.

    Time then runs in units of 1/gamma; dimensionless observables are unchanged
    provided delays are multiplied by the old gamma.
    """
    gamma = params.gamma1 + params.gamma3
    # already normalized up to rounding of the division: leave untouched
    if abs(gamma - 1.0) <= 4 * sys.float_info.epsilon:
        return params
    return params.scaled(1.0 / gamma)
