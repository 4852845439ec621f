"""Exact arithmetic in the group of formal power series under composition."""

from .construct import (
    ConstructionRecord,
    FreeCoefficientSpec,
    build_existence,
    build_unique,
    forced_coefficient,
    growth_report,
    normal_form,
    schroder_linearize,
    stanley_build,
    stanley_involution_check,
)
from .errors import (
    ConsistencyError,
    ContextMismatchError,
    DomainError,
    NotFiniteOrderError,
    NotInGroupError,
    ParseError,
    SchemaError,
)
from .exactfield import (
    FieldContext,
    FieldElement,
    cyclotomic_polynomial,
    is_primitive_root,
    make_field,
    multiplicative_order,
    primitive_root,
)
from .finiteorder import (
    ConjugatorFamily,
    OrderResult,
    complete_conjugator,
    compositional_order,
    conjugators,
    in_centralizer,
    linearize_finite,
    star,
)
from .series import (
    Jet,
    compose,
    equals,
    identity,
    invert,
    is_identity_iterate,
    iterate,
    linear,
    multiply,
    truncate,
)

__version__ = "0.1.0"
