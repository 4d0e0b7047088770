"""Majorization and entropic entanglement criteria for bipartite qudit densities."""

from ._majorlens import (
    DomainError,
    Side,
    ValidationError,
    area_fractions,
    classify_point,
    conditional,
    curve,
    disorder_check,
    eigenvalues,
    entropy,
    family_density,
    family_reduced,
    family_sigma,
    family_spectrum,
    in_region,
    partial_trace,
    partial_transpose,
    peaked_search,
    peres_check,
    recommend_alpha,
    threshold,
    thresholds,
    tsallis_sweep,
)

__all__ = [
    "DomainError",
    "Side",
    "ValidationError",
    "area_fractions",
    "classify_point",
    "conditional",
    "curve",
    "disorder_check",
    "eigenvalues",
    "entropy",
    "family_density",
    "family_reduced",
    "family_sigma",
    "family_spectrum",
    "in_region",
    "partial_trace",
    "partial_transpose",
    "peaked_search",
    "peres_check",
    "recommend_alpha",
    "threshold",
    "thresholds",
    "tsallis_sweep",
]
