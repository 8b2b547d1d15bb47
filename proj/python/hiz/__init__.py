"""Exact WKB expansions of group integrals over the classical ensembles.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._hiz import (  # noqa: F401
    __version__,
    c_triple,
    c_triple_at,
    c_two_point,
    chi_json,
    chi_text,
    complete_weight,
    cubic_identity_residual,
    deletion_rule_weight,
    hciz_unitary_det,
    id_residuals,
    mc_group_integral,
    pde_residual,
    phi_order_residual_is_zero,
    reconstruct_full_integral,
    series_eval,
)

__all__ = [
    "__version__",
    "c_triple",
    "c_triple_at",
    "c_two_point",
    "chi_json",
    "chi_text",
    "complete_weight",
    "cubic_identity_residual",
    "deletion_rule_weight",
    "hciz_unitary_det",
    "id_residuals",
    "mc_group_integral",
    "pde_residual",
    "phi_order_residual_is_zero",
    "reconstruct_full_integral",
    "series_eval",
]
