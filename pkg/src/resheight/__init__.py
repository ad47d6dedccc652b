"""Heights of generic Sylvester resultants Res(f, g) for deg f <= 3 (and small deg f in general)."""

from .bigpoly import SparsePoly, Universe, coefficient_of, group_degrees, height, omega_degree_set
from .errors import BracketError, DomainError, FeasibilityError, ResHeightError, UniverseMismatchError
from .kernels import BACKEND
from .sylvester import SylvesterSpec, build_matrix, expand_resultant, f_band_minor, naive_determinant

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BracketError",
    "DomainError",
    "FeasibilityError",
    "ResHeightError",
    "SparsePoly",
    "SylvesterSpec",
    "Universe",
    "UniverseMismatchError",
    "build_matrix",
    "coefficient_of",
    "expand_resultant",
    "f_band_minor",
    "group_degrees",
    "height",
    "naive_determinant",
    "omega_degree_set",
]
