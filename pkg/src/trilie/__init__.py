"""Exact verification of non-abelian extensions of 3-Lie algebras."""

from .algebra import (
    CheckReport,
    LeibnizAlgebra,
    LinearMap,
    Space,
    ThreeLieAlgebra,
    Vector,
    Verdict,
    bracket2,
    bracket3,
    fi_defect,
    fundamental_leibniz,
    is_left_derivation,
    is_leibniz,
    is_morphism3,
    is_right_derivation,
    is_three_lie,
    leibniz_defect,
)
from .dgla import (
    GradedCochain,
    cochain_to_datum,
    datum_to_cochain,
    dgla_differential,
    gauge_transform,
    is_restricted,
    mc_defect,
    nr_bracket,
    nr_compose,
)
from .errors import (
    ConstraintError,
    DomainError,
    ExprEvalError,
    ExprSyntaxError,
    InputError,
    PreconditionError,
    ShapeError,
    SpaceMismatchError,
    TrilieError,
    UnsupportedDegreeError,
)
from .expr import evaluate, parse_expr
from .extension import (
    ExtensionDatum,
    extension_bracket,
    extension_defects,
    is_extension_isomorphism,
    theta_morphism_check,
)
from .leibniz_ext import (
    LeibnizExtensionDatum,
    assemble_leibniz_extension,
    build_l_r_varpi,
    fundamental_oracle_check,
    leibniz_extension_defects,
    w_bracket,
)
from .problem import load_problem, read_problem
from .representation import Cochain, Representation, adjoint_representation, coboundary, rep_defects, semidirect_product

__all__ = [name for name in dir() if not name.startswith("_")]
