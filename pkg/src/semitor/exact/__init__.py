"""Exact arithmetic over Q and embedded number fields."""

from .conjugate import ConjugateContext, conjugate_ops
from .field import (Factor, FieldElement, NumberField, field_create, generated_subfield, invert,
                    minimal_polynomial, q_dependence)
from .intervals import Disk, IntervalRect
from .polynomial import RationalPolynomial
from .rational import Q, mpq, parse_rational

__all__ = ["ConjugateContext", "conjugate_ops", "Factor", "FieldElement", "NumberField",
           "field_create", "generated_subfield", "invert", "minimal_polynomial", "q_dependence",
           "Disk", "IntervalRect", "RationalPolynomial", "Q", "mpq", "parse_rational",
           "sign_real"]


def sign_real(x: FieldElement) -> int:
    """Certified sign of a real element of a field or of its conjugation closure."""
    return x.field.conjugate_context.sign_real(x)
