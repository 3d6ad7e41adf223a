"""Exact and approximate null distributions of linear rank statistics."""

from ._core import (
    Phi,
    RankEdgeError,
    diagnose,
    exact_distribution,
    expansion,
    hermite,
    iid_lattice_law,
    mc_distribution,
    moments,
    moments_exact,
    outer,
    psi,
    sample_coupling,
    scores,
    standardize,
    sup_distance_phi,
    v_alpha,
    van_zwet,
)

__all__ = [
    "Phi",
    "RankEdgeError",
    "diagnose",
    "exact_distribution",
    "expansion",
    "hermite",
    "iid_lattice_law",
    "mc_distribution",
    "moments",
    "moments_exact",
    "outer",
    "psi",
    "sample_coupling",
    "scores",
    "standardize",
    "sup_distance_phi",
    "v_alpha",
    "van_zwet",
]
