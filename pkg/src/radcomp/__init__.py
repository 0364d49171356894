"""Exact operator calculus for b-functions, radial components and U-modules.

The main entry points are re-exported here; submodules hold the details:

* :mod:`radcomp.poly` for exact univariate and sparse multivariate polynomials,
* :mod:`radcomp.weyl` for normal-ordered differential operators,
* :mod:`radcomp.theta` for one-variable operators in theta-form,
* :mod:`radcomp.cherednik` for the Dunkl operator and the spherical subalgebra,
* :mod:`radcomp.phv` for relative invariants, b-functions and radial components,
* :mod:`radcomp.rep_theory` and :mod:`radcomp.quiver` for modules over U.
"""

__version__ = "0.1.0"

from .errors import (
    DegreeExceeded,
    DimensionMismatch,
    DimensionTooLarge,
    InsufficientModuli,
    NonScalarQuotient,
    NotDivisible,
    NotPolynomial,
    NotRadial,
    NotRationalSplit,
    NotSpherical,
    RadcompError,
    Unsupported,
)
from .poly import MultiPoly, UniPoly, interpolate, rational_roots, shift_star, tau_difference
from .weyl import WeylOp, weyl_apply, weyl_multiply
from .theta import ThetaOp, theta_compose, theta_from_samples, theta_to_differential
from .cherednik import CherednikParams, CrossedOp, identity_suite, params_from_bfunction, spherical_delta
from .phv import (
    build_invariant,
    catalog_entry,
    dual_operator,
    extract_bfunction,
    harmonic_dimension,
    omega0_annihilates,
    radial_component,
)
from .rep_theory import global_dimension, lowest_weights, simple_dimension, verma_lattice
from .quiver import build_quiver, emit_dot
from .bspec import parse_b_spec, render_factored

__all__ = [
    "__version__",
    "RadcompError",
    "DegreeExceeded",
    "DimensionMismatch",
    "DimensionTooLarge",
    "InsufficientModuli",
    "NonScalarQuotient",
    "NotDivisible",
    "NotPolynomial",
    "NotRadial",
    "NotRationalSplit",
    "NotSpherical",
    "Unsupported",
    "UniPoly",
    "MultiPoly",
    "interpolate",
    "rational_roots",
    "shift_star",
    "tau_difference",
    "WeylOp",
    "weyl_apply",
    "weyl_multiply",
    "ThetaOp",
    "theta_compose",
    "theta_from_samples",
    "theta_to_differential",
    "CherednikParams",
    "CrossedOp",
    "identity_suite",
    "params_from_bfunction",
    "spherical_delta",
    "build_invariant",
    "catalog_entry",
    "dual_operator",
    "extract_bfunction",
    "harmonic_dimension",
    "omega0_annihilates",
    "radial_component",
    "global_dimension",
    "lowest_weights",
    "simple_dimension",
    "verma_lattice",
    "build_quiver",
    "emit_dot",
    "parse_b_spec",
    "render_factored",
]
