"""Exact polynomials, nested radicals and lattice-based constant recognition."""

from .lll import lll_reduce, recognize_min_poly
from .poly import IntPolynomial, RealRoot, RootSpec, count_real_roots, real_roots, root_by_spec
from .radical import BranchAssignment, RadicalExpr, branch_search, parse_radical, radical_eval

__all__ = [
    "BranchAssignment",
    "IntPolynomial",
    "RadicalExpr",
    "RealRoot",
    "RootSpec",
    "branch_search",
    "count_real_roots",
    "lll_reduce",
    "parse_radical",
    "radical_eval",
    "real_roots",
    "recognize_min_poly",
    "root_by_spec",
]
