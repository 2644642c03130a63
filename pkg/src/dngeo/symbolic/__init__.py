"""Exact scalar arithmetic: rational functions over Q and Q(i), a parser,
and fraction-free linear algebra over the function field."""

from .gaussian import GaussianRational
from .linalg import (
    FracMatrix,
    eval_matrix_at_sample,
    generic_rank,
    kernel_basis,
    normalize_vector,
    numeric_rank,
    rank_at_samples,
    sample_point,
    solve_linear,
)
from .parse import parse_scalar
from .poly import Polynomial, divexact, poly_gcd, poly_lcm
from .scalar import Chart, ScalarExpr, coeff_to_str, poly_to_str, same_chart, to_str

__all__ = [
    "Chart",
    "FracMatrix",
    "GaussianRational",
    "Polynomial",
    "ScalarExpr",
    "coeff_to_str",
    "divexact",
    "eval_matrix_at_sample",
    "generic_rank",
    "kernel_basis",
    "normalize_vector",
    "numeric_rank",
    "parse_scalar",
    "poly_gcd",
    "poly_lcm",
    "poly_to_str",
    "rank_at_samples",
    "same_chart",
    "sample_point",
    "solve_linear",
    "to_str",
]
