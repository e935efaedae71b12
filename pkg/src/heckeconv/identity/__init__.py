"""Convolution identities: weights, boundary terms, sums and regularized values."""

from .params import IdentityParams, Regime
from .weights import BranchCase, WeightValue, weight_q, weight_q_cut_form
from .terms import cusp_coefficient, cusp_term, z_term
from .sums import EvaluationReport, LhsResult, lhs_sum, rhs_parts, verify

__all__ = [
    "BranchCase", "EvaluationReport", "IdentityParams", "LhsResult", "Regime", "WeightValue",
    "cusp_coefficient", "cusp_term", "lhs_sum", "rhs_parts", "verify", "weight_q",
    "weight_q_cut_form", "z_term",
]
