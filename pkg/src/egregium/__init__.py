"""Numerical differential-geometry engine.

Computes curvature of plane curves and embedded surfaces in the graphed,
parametric and implicit representations, evaluates intrinsic curvature
directly from metric coefficients, and verifies curvature invariants
(isometry invariance, flatness criterion, total-curvature identities,
geodesic-triangle angle excess) at machine precision.
"""

from . import (catalog, curves, exprlang, geodesics, intrinsic, jets, quad,
               surfaces)
from .errors import GeometryError, InputError, NumericError

__all__ = [
    "catalog", "curves", "exprlang", "geodesics", "intrinsic", "jets",
    "quad", "surfaces", "GeometryError", "InputError", "NumericError",
]

__version__ = "0.1.0"
