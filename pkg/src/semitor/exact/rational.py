"""Rational scalars and exact complex rationals.

``mpq`` from gmpy2 is used as the rational type throughout. Complex rationals
are plain ``(re, im)`` tuples.
"""

from __future__ import annotations

import re
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from ..errors import InvalidInput

__all__ = ["mpq", "Q", "parse_rational", "format_rational", "sqrt_upper", "lcm",
           "cadd", "csub", "cmul", "cabs2", "cdiv", "ceil_q", "floor_q"]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")


def Q(x) -> mpq:
    """Coerce ints, Fractions, mpq and "p/q" strings to ``mpq``."""
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return mpq(x)


def parse_rational(text: str) -> mpq:
    """Parse ``"p"`` or ``"p/q"``; decimals only as ``"decimal:0.125"``."""
    if not isinstance(text, str):
        raise InvalidInput(f"expected a rational string, got {text!r}")
    if text.startswith("decimal:"):
        body = text[len("decimal:"):].strip()
        if not _DECIMAL.match(body):
            raise InvalidInput(f"bad decimal literal {text!r}")
        return mpq(Fraction(body))
    m = _RATIONAL.match(text)
    if not m:
        raise InvalidInput(f"bad rational literal {text!r} (use 'p/q' or 'decimal:x.y')")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise InvalidInput(f"zero denominator in {text!r}")
    return mpq(num, den)


def format_rational(q) -> str:
    return str(mpq(q))


def lcm(a: int, b: int) -> int:
    return int(gmpy2.lcm(a, b))


def sqrt_upper(q, bits: int = 64) -> mpq:
    """Rational upper bound for sqrt(q), tight to a relative 2**-bits."""
    q = mpq(q)
    if q < 0:
        raise ValueError("negative argument")
    if q == 0:
        return mpq(0)
    mag = int(q.denominator).bit_length() - int(q.numerator).bit_length()
    bits = bits + max(0, mag // 2 + 2)
    scale = 4 ** bits
    n = q * scale
    n = -((-n.numerator) // n.denominator)  # ceil
    return mpq(int(gmpy2.isqrt(n)) + 1, 2 ** bits)


def floor_q(q) -> int:
    q = mpq(q)
    return int(q.numerator // q.denominator)


def ceil_q(q) -> int:
    return -floor_q(-mpq(q))


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cabs2(a):
    return a[0] * a[0] + a[1] * a[1]


def cdiv(a, b):
    n = cabs2(b)
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)
