"""Exact arithmetic kernel: rational functions, fraction-free solving, series and real roots."""

from .base import (
    NoRootError,
    PoleAtOriginError,
    PolyratError,
    RationalFunction,
    SingularSystemError,
    ZeroDivisionRationalError,
    marker_names,
    one_minus_x_inverse,
    parse_polynomial,
    polynomial_ring,
    render_polynomial,
    univariate_coefficients,
)
from .expansion import dominant_pole_part, factorial_weight, marker_expansion, polynomial_value
from .linsolve import bareiss_solve, solve_linear_system
from .roots import RootInterval, smallest_positive_real_root
from .series import SeriesPrefix, series_coefficients

__all__ = [
    "NoRootError",
    "PoleAtOriginError",
    "PolyratError",
    "RationalFunction",
    "RootInterval",
    "SeriesPrefix",
    "SingularSystemError",
    "ZeroDivisionRationalError",
    "bareiss_solve",
    "dominant_pole_part",
    "factorial_weight",
    "marker_expansion",
    "marker_names",
    "one_minus_x_inverse",
    "parse_polynomial",
    "polynomial_ring",
    "polynomial_value",
    "render_polynomial",
    "series_coefficients",
    "smallest_positive_real_root",
    "solve_linear_system",
    "univariate_coefficients",
]
