"""Exact polynomial algebra over Q and bi-Lipschitz certificates for algebraic varieties."""

from .groebner import BudgetExceeded, GroebnerBasis, Ideal, groebner_basis, limits, normal_form
from .ideal_ops import (
    Parametrization,
    dehomogenize,
    eliminate,
    homogenize,
    implicitize,
    intersect,
    radical_membership,
    saturate,
    saturate_ideal,
)
from .invariants import degree, dimension, multiplicity, tangent_cone, zariski_tangent_dim
from .lipschitz import (
    AlgebraicMap,
    LinearProjection,
    SecantCone,
    Verdict,
    certify_projection,
    graph_ideal,
    random_center_search,
    secant_cone,
    secant_cone_parametric,
    verify_degree_invariance,
    verify_multiplicity_invariance,
    veronese_cone,
)
from .polyring import ParseError, Polynomial, Ring, deglex, grevlex, lex
from .sampler import distortion, secant_cloud

__version__ = "0.1.0"
