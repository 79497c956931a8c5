"""Dense univariate polynomials with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import sympy

from .rational import Q, cadd, cmul, mpq

__all__ = ["RationalPolynomial"]


def _strip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients in ascending degree; the zero polynomial is ``()``."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable = ()):
        object.__setattr__(self, "coefficients", _strip([Q(c) for c in coefficients]))

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def lc(self) -> mpq:
        return self.coefficients[-1] if self.coefficients else mpq(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> mpq:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else mpq(0)

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self), len(other))
        return RationalPolynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self or not other:
            return RationalPolynomial()
        out = [mpq(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RationalPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        inv_lc = 1 / other.lc
        quo = [mpq(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lc
            if c == 0:
                continue
            quo[k - dq] = c
            for j, b in enumerate(other.coefficients):
                rem[k - dq + j] -= c * b
        return RationalPolynomial(quo), RationalPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "RationalPolynomial":
        if not self:
            return self
        inv = 1 / self.lc
        return RationalPolynomial([c * inv for c in self.coefficients])

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([k * c for k, c in enumerate(self.coefficients)][1:])

    def gcd(self, other) -> "RationalPolynomial":
        """Monic gcd (zero if both are zero)."""
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, t) with s*self + t*other = g monic."""
        r0, r1 = self, self._coerce(other)
        s0, s1 = RationalPolynomial((1,)), RationalPolynomial()
        t0, t1 = RationalPolynomial(), RationalPolynomial((1,))
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        inv = 1 / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def __call__(self, x):
        """Horner evaluation at anything supporting + and * with rationals."""
        acc = x * 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_complex(self, z):
        """Exact evaluation at a complex rational ``(re, im)``."""
        acc = (mpq(0), mpq(0))
        for c in reversed(self.coefficients):
            acc = cadd(cmul(acc, z), (c, mpq(0)))
        return acc

    def compose(self, other: "RationalPolynomial") -> "RationalPolynomial":
        acc = RationalPolynomial()
        for c in reversed(self.coefficients):
            acc = acc * other + c
        return acc

    def to_sympy(self, var: sympy.Symbol) -> sympy.Poly:
        coeffs = [sympy.Rational(int(c.numerator), int(c.denominator))
                  for c in reversed(self.coefficients)]
        return sympy.Poly(coeffs or [0], var, domain="QQ")

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "RationalPolynomial":
        coeffs = poly.all_coeffs()[::-1]
        return cls(mpq(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs)

    def integer_primitive(self) -> tuple:
        """Integer coefficients of the primitive multiple with positive leading term."""
        import math
        den = 1
        for c in self.coefficients:
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        ints = [int(c * den) for c in self.coefficients]
        g = 0
        for a in ints:
            g = math.gcd(g, a)
        if g == 0:
            return ()
        if ints[-1] < 0:
            g = -g
        return tuple(a // g for a in ints)

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                terms.append(f"+ {mono}")
            elif mono and c == -1:
                terms.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c))
                terms.append(f"{sign} {body}{'*' + mono if mono else ''}")
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def to_strings(self) -> list:
        return [str(c) for c in self.coefficients]


def from_roots(roots: Sequence) -> RationalPolynomial:
    p = RationalPolynomial((1,))
    for r in roots:
        p = p * RationalPolynomial((-Q(r), 1))
    return p
