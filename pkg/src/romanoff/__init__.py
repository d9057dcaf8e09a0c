"""Exact-arithmetic counting and explicit inequality verification for
shifted-power representations f = h + g^k over finite fields."""

from .field import (
    DEFAULT_MAX_Q,
    FieldElement,
    FieldError,
    FieldSpec,
    field_from_q,
    field_new,
    parse_field,
)
from .poly import (
    EnumerationCapError,
    Factorization,
    Poly,
    PolyError,
    PolyParseError,
    enumerate_monic,
    enumerate_monic_irreducible,
    factor,
    gcd,
    is_irreducible,
    moebius,
    monic_irreducibles,
    norm,
    order_mod,
    parse_poly,
    powmod,
    render_poly,
)

__all__ = [
    "DEFAULT_MAX_Q",
    "EnumerationCapError",
    "Factorization",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "Poly",
    "PolyError",
    "PolyParseError",
    "enumerate_monic",
    "enumerate_monic_irreducible",
    "factor",
    "field_from_q",
    "field_new",
    "gcd",
    "is_irreducible",
    "moebius",
    "monic_irreducibles",
    "norm",
    "order_mod",
    "parse_field",
    "parse_poly",
    "powmod",
    "render_poly",
]

__version__ = "0.1.0"
