"""Constrained K-means solver with cardinality and pairwise link constraints."""

from ._core import (
    KmeansResult,
    OracleResult,
    Residuals,
    SolveResult,
    accuracy,
    brute_force,
    gen_blobs,
    lloyd,
    nmi,
    solve,
    validate_constraints,
)

__all__ = [
    "KmeansResult",
    "OracleResult",
    "Residuals",
    "SolveResult",
    "accuracy",
    "brute_force",
    "gen_blobs",
    "lloyd",
    "nmi",
    "solve",
    "validate_constraints",
]
