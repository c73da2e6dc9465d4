"""Exact deciders for balanced and pluriclosed regular complex structures
on compact quotients of real semisimple Lie groups, driven by Vogan diagrams."""
from .classify import (
    Method,
    construct_compatible_ell,
    decide_balanced,
    decide_pluriclosed,
    exclusivity_check,
)
from .dsl import ParseError, ValidationError, elaborate, format_expr, parse_diagram
from .lpexact import AlternativeProblem, Dual, Primal, solve_alternative, verify_certificate
from .regstruct import (
    EllSubspace,
    build_R,
    construct_default_ell,
    enumerate_delta0,
    make_structure,
    moduli_dim,
    snow_decomposition_exists,
    validate_ell,
)
from .rootsys import CartanMatrix, RootSystem, build_root_system, cartan_matrix, direct_sum, root_system
from .vogan import (
    Table1Method,
    VoganDiagram,
    classify_root,
    enumerate_vogan,
    make_vogan,
    table1_membership,
)

__version__ = "0.1.0"
