"""Exact F_2 polynomial, series and linear-algebra kernel."""

from .linalg import (ColumnIndex, Eliminator, InhomogeneousError, gf2_rank,
                     graded_quotient_dim, graded_slice_rank, relation_multiples)
from .poly import (F2Poly, Homomorphism, PolyRing, TruncationError, TruncCtx, VarTable,
                   VarTableMismatch, poly_add, poly_mul, poly_sum, prefix_embedding,
                   prefix_projection)
from .series import (InverseTable, Series, WindowError, invert_F, series_compose,
                     series_reversion)

ESeries = Series

__all__ = [
    "ColumnIndex", "Eliminator", "ESeries", "F2Poly", "Homomorphism", "InhomogeneousError",
    "InverseTable", "PolyRing", "Series", "TruncCtx", "TruncationError", "VarTable",
    "VarTableMismatch", "WindowError", "gf2_rank", "graded_quotient_dim",
    "graded_slice_rank", "invert_F", "poly_add", "poly_mul", "poly_sum", "prefix_embedding",
    "prefix_projection", "relation_multiples", "series_compose", "series_reversion",
]
