"""Exact tools for border rank algorithms of matrix multiplication tensors."""

from .arith import LaurentPoly, MultiPoly, format_rational, poly_arith, rational
from .linalg import LinearSubspace
from .tensor import (
    RankOnePoint,
    Tensor,
    TensorSpace,
    apply_gl,
    apply_symmetry,
    bclrs_tensor,
    flatten,
    mat_mul_tensor,
    multilinear_ranks,
    target_tensor,
    zeroed_matmul_tensor,
)

__version__ = "0.1.0"
