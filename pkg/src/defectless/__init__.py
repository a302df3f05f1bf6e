"""Exact invariants of defectless polynomials over the p-adic rationals."""

from .ground import INFINITY, GroundContext, ValueGroup, group_index, group_join, vp
from .maclane import (
    ChainError,
    InconsistencyError,
    MacLaneChain,
    chain_invariants,
    key_poly_necessary_check,
    mu_eval,
    newton_polygon,
    validate,
)
from .okutsu import OkutsuReport, ValueMultiset, full_report, okutsu_depth
from .oracle import crosscheck, omega_radical_family, omega_via_newton, sample_weight
from .poly import ParseError, Polynomial, divrem, parse, phi_expansion, taylor_shift_coeffs

__all__ = [
    "INFINITY", "GroundContext", "ValueGroup", "group_index", "group_join", "vp",
    "ChainError", "InconsistencyError", "MacLaneChain", "chain_invariants",
    "key_poly_necessary_check", "mu_eval", "newton_polygon", "validate",
    "OkutsuReport", "ValueMultiset", "full_report", "okutsu_depth",
    "crosscheck", "omega_radical_family", "omega_via_newton", "sample_weight",
    "ParseError", "Polynomial", "divrem", "parse", "phi_expansion", "taylor_shift_coeffs",
]
