"""Certified numerical radius computation and verification of numerical-radius inequalities."""

from numrad.cartesian import CartesianPair, circle_combination, decompose, recompose, rotated_real_part
from numrad.errors import (DimensionMismatch, IllConditioned, InvalidArgument, NotHermitian, NumericalError,
                           NumradError, ParseError, Unachievable)
from numrad.linalg import (adjoint, block_2x2, hermitian, hermitian_eigenvalues, mat_add, mat_mul, rayleigh,
                           scalar_mul, schatten_norm, spectral_norm)
from numrad.radius import (FovBoundary, RadiusCertificate, fov_boundary, fov_contains, numerical_radius,
                           radius_certified, radius_via_circle, rayleigh_lower_bound)

__version__ = "0.1.0"
