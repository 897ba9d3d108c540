"""Invariants of plane curve singularities computed three independent ways.

Semigroups of values, Poincare series, monodromy zeta functions,
multivariable Alexander polynomials and Euler characteristics of
extended-semigroup fibers, all in exact integer arithmetic.
"""

from .errors import (
    ArityError,
    DegenerateFactorError,
    FixtureError,
    InvalidCharExponents,
    MalformedGraph,
    MarginError,
    NonPolynomialError,
    NotCofinite,
    NotDivisibleError,
    PrecisionError,
    SingCurveError,
    SynthesisError,
)
from .graph import (
    DualGraph,
    MultiplicityTable,
    acampo_zeta,
    alexander_one_variable,
    alexander_polynomial,
    blowup_edge,
    blowup_free_point,
    euler_smooth_parts,
    graph_from_branch,
    solve_multiplicities,
)
from .jets import BranchParam, CurveModel, Germ, c_of_v, fiber_report, jet_subspace_dim, valuation
from .poincare import (
    build_laurent_window,
    euler_integral,
    p_prime,
    poincare_from_jets,
    verify_curve,
    x_series,
)
from .semigroup import (
    CharExponents,
    branch_data_from_char_exponents,
    enumerate_semigroup,
    poincare_at_infinity,
    poincare_closed_form,
    semigroup_at_infinity,
)
from .series import (
    IntPolynomial,
    MultiIndex,
    ProductForm,
    TruncatedSeries,
    exact_divide,
    expand_product_form,
    specialize_diagonal,
)

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "BranchParam",
    "CharExponents",
    "CurveModel",
    "DegenerateFactorError",
    "DualGraph",
    "FixtureError",
    "Germ",
    "IntPolynomial",
    "InvalidCharExponents",
    "MalformedGraph",
    "MarginError",
    "MultiIndex",
    "MultiplicityTable",
    "NonPolynomialError",
    "NotCofinite",
    "NotDivisibleError",
    "PrecisionError",
    "ProductForm",
    "SingCurveError",
    "SynthesisError",
    "TruncatedSeries",
    "acampo_zeta",
    "alexander_one_variable",
    "alexander_polynomial",
    "blowup_edge",
    "blowup_free_point",
    "branch_data_from_char_exponents",
    "build_laurent_window",
    "c_of_v",
    "enumerate_semigroup",
    "euler_integral",
    "euler_smooth_parts",
    "exact_divide",
    "expand_product_form",
    "fiber_report",
    "graph_from_branch",
    "jet_subspace_dim",
    "p_prime",
    "poincare_at_infinity",
    "poincare_closed_form",
    "poincare_from_jets",
    "semigroup_at_infinity",
    "solve_multiplicities",
    "specialize_diagonal",
    "valuation",
    "verify_curve",
    "x_series",
]
