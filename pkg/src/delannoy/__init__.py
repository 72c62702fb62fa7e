"""Weighted Delannoy numbers with generalized boundary conditions."""

from .params import ParameterError, Params, format_rational, normalize, parse_rational
from .grid import (
    Boundary,
    DiagonalSeq,
    Grid,
    compute_diagonal,
    compute_diagonal_custom,
    compute_grid,
    compute_grid_custom,
)
from .recurrence import PolyRecurrence, Poly, discover_recurrence, derived_recurrence

__version__ = "0.1.0"
