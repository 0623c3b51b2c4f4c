"""Exact computations with apolarity, polar simplices and their degenerations.

Two polynomial rings in dual variables: S = k[x1..xn] acting on
T = k[y1..yn] by differentiation (and symmetrically T on S).  All core
arithmetic is exact over Q; modular arithmetic is used only inside rank
computations that say so.
"""

from .rings import Form, Scalar, monomials, parse_form
from .ideals import GradedIdeal, HilbertFunction, hilbert_function
from .apolarity import (apply_diff, apolar_ideal, LinearSubspace,
                        polarity_conditions, Quadric, inverse_quadric)
from .limits import weight_limit
from .vps import (check_vps, build_unsat_limit, polar_simplex_sample,
                  standard_split_quadric)
from .tangent import hilb_tangent, syz_tangent, torus_weights
from .grassmann import plucker, plucker_quadric_space, vps_span

__version__ = "0.1.0"

__all__ = [
    "Form",
    "Scalar",
    "monomials",
    "parse_form",
    "GradedIdeal",
    "HilbertFunction",
    "hilbert_function",
    "apply_diff",
    "apolar_ideal",
    "LinearSubspace",
    "polarity_conditions",
    "Quadric",
    "inverse_quadric",
    "weight_limit",
    "check_vps",
    "build_unsat_limit",
    "polar_simplex_sample",
    "standard_split_quadric",
    "hilb_tangent",
    "syz_tangent",
    "torus_weights",
    "plucker",
    "plucker_quadric_space",
    "vps_span",
    "__version__",
]
