"""Exact counting of commuting 2x2 matrix pairs and related energies."""

from .commute import (
    CommuteReport,
    affine_energy,
    commute_count,
    commute_count_measure,
    commute_count_product_measure,
    commute_count_set,
    commute_offdiag_degenerate_count,
    commute_offdiag_nonzero_count,
    delta,
    delta_with_witness,
    theorem1_check,
)
from .config import CapExceeded
from .exact import Mat2, mat, to_scalar
from .measures import MatrixMeasure, ScalarMeasure, product_measure, uniform_on
from .profiles import (
    affine_energy_asym,
    asym_commute_count,
    energy_additive,
    energy_mult,
    quotient_profile,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CommuteReport",
    "Mat2",
    "MatrixMeasure",
    "ScalarMeasure",
    "affine_energy",
    "affine_energy_asym",
    "asym_commute_count",
    "commute_count",
    "commute_count_measure",
    "commute_count_product_measure",
    "commute_count_set",
    "commute_offdiag_degenerate_count",
    "commute_offdiag_nonzero_count",
    "delta",
    "delta_with_witness",
    "energy_additive",
    "energy_mult",
    "mat",
    "product_measure",
    "quotient_profile",
    "theorem1_check",
    "to_scalar",
    "uniform_on",
]
