"""Polarization-resolved photon-pair correlations from a biexciton-exciton cascade."""
from .correlation import (
    EmissionPrefactor,
    degree_of_correlation,
    degree_time_averaged,
    g2_general,
    g2_symmetric,
    kernels,
)
from .dynamics import CascadeState, evolve_analytic
from .polarization import BasisPair, PolarizerSetting, orthogonal, preset
from .rates import DerivedRates, RateParams, ValidationError, derive, normalize_to_gamma

__all__ = [
    "BasisPair",
    "CascadeState",
    "DerivedRates",
    "EmissionPrefactor",
    "PolarizerSetting",
    "RateParams",
    "ValidationError",
    "degree_of_correlation",
    "degree_time_averaged",
    "derive",
    "evolve_analytic",
    "g2_general",
    "g2_symmetric",
    "kernels",
    "normalize_to_gamma",
    "orthogonal",
    "preset",
]
