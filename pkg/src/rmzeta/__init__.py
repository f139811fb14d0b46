"""Exact local-factor computations for real-multiplication torus data
and CM elliptic curves, with per-prime comparison reports."""

__version__ = "0.1.0"

from .curves import WeierstrassCurve, cm_catalog
from .intmat import IntMatrix, smith_normal_form
from .kgroups import FiniteAbelianGroup, k0_cuntz_krieger, k0_order
from .quadratic import ContinuedFraction, QuadraticIrrational, expand, matrix_A
from .zeta import LocalFactor, local_l_factor_curve, zeta_local_nt_closed

__all__ = [
    "__version__",
    "ContinuedFraction",
    "FiniteAbelianGroup",
    "IntMatrix",
    "LocalFactor",
    "QuadraticIrrational",
    "WeierstrassCurve",
    "cm_catalog",
    "expand",
    "k0_cuntz_krieger",
    "k0_order",
    "local_l_factor_curve",
    "matrix_A",
    "smith_normal_form",
    "zeta_local_nt_closed",
]
