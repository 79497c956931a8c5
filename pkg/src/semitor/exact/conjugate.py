"""Exact complex conjugation for elements of an embedded number field.

For K = Q(theta) the context builds the field F = Q(theta, conj(theta), i)
as an absolute number field with its own certified embedding. Every real or
imaginary part of an element of K is an element of F, so reality tests,
real-rank computations and H-membership are exact.

F is obtained by adjoining one root at a time. Adjoining a root b of p to a
field A = Q(a) uses the primitive element a + c*b: its minimal polynomial is
the irreducible factor of Res_t(g_A(t), p((z - t)/c)) that vanishes at the
embedded value, and a is recovered in F as the unique common root of g_A(t)
and p((gamma - t)/c).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import sympy

from ..errors import ConsistencyViolation, NotRealInput
from .field import FieldElement, NumberField
from .intervals import DEFAULT_BITS, Disk, IntervalRect, isolate_all_roots, refine_root
from .polynomial import RationalPolynomial
from .rational import cabs2, mpq

__all__ = ["ConjugateContext", "conjugate_ops"]

_T, _Z = sympy.symbols("t z")


# --- polynomials over an embedded field, as lists of FieldElements --------

def _fpoly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _fpoly_mod(a: list, b: list) -> list:
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - c * bj
        a.pop()
        _fpoly_trim(a)
    return a


def _fpoly_gcd(a: list, b: list) -> list:
    a, b = _fpoly_trim(list(a)), _fpoly_trim(list(b))
    while b:
        a, b = b, _fpoly_mod(a, b)
    inv = a[-1].inverse()
    return [x * inv for x in a]


def _fpoly_mul(a: list, b: list) -> list:
    out = [a[0].field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _fpoly_add(a: list, b: list, zero) -> list:
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else zero) + (b[k] if k < len(b) else zero) for k in range(n)]


def _to_sympy_expr(p: RationalPolynomial, var):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * var ** k
               for k, c in enumerate(p.coefficients))


@dataclass(frozen=True)
class _Adjunction:
    field: NumberField
    a: FieldElement       # image of the old generator
    b: FieldElement       # the adjoined root
    multiplier: int
    modulus: RationalPolynomial


def _select_root(h_factors, enclose: Callable[[int], Disk]):
    """Find the unique (factor, root disk) pair matching the enclosure of gamma."""
    bits = DEFAULT_BITS
    while bits <= 8192:
        target = enclose(bits)
        hits = []
        for h in h_factors:
            for d in isolate_all_roots(h, bits):
                if d.intersects(target):
                    hits.append((h, d))
        if len(hits) == 1:
            return hits[0]
        bits *= 2
    raise ConsistencyViolation("could not single out the embedded root of the compositum")


def _isolating_field(h: RationalPolynomial, disk: Disk) -> NumberField:
    roots = isolate_all_roots(h, DEFAULT_BITS)
    bits = DEFAULT_BITS
    while True:
        rect = disk.rect()
        others = [d for d in roots if not d.intersects(disk)]
        if not any(rect.intersects_disk(d) for d in others):
            return NumberField(h, IntervalRect(rect.re_lo, rect.re_hi, rect.im_lo, rect.im_hi))
        bits *= 2
        disk = refine_root(h, disk, bits)
        roots = isolate_all_roots(h, bits)


def _adjoin(base: NumberField, p: RationalPolynomial,
            b_enclosure: Callable[[int], Disk]) -> _Adjunction:
    g = base.min_poly
    g_expr = _to_sympy_expr(g, _T)
    dp = p.degree
    for c in range(1, 200):
        shifted = sympy.expand(_to_sympy_expr(p, (_Z - _T) / c) * c ** dp)
        res = sympy.Poly(sympy.resultant(g_expr, shifted, _T), _Z, domain="QQ")
        R = RationalPolynomial.from_sympy(res)
        if R.is_squarefree():
            break
    else:
        raise ConsistencyViolation("no separating multiplier found")
    _, factors = sympy.factor_list(res)
    candidates = [RationalPolynomial.from_sympy(sympy.Poly(f, _Z, domain="QQ")).monic()
                  for f, _ in factors]

    def gamma_enclosure(bits):
        a = base.embedding(bits + 8)
        return (a + b_enclosure(bits + 8) * c).rounded(bits + 12)

    h, disk = _select_root(candidates, gamma_enclosure)
    F = _isolating_field(h, disk)
    gamma = F.gen
    # g(t) and c**dp * p((gamma - t)/c) over F share exactly the root t = a
    gpoly = [F.rational(x) for x in g.coefficients]
    lin = [gamma * mpq(1, c), F.rational(mpq(-1, c))]
    q = [F.zero]
    for coeff in reversed(p.coefficients):
        q = _fpoly_add(_fpoly_mul(q, lin), [F.rational(coeff)], F.zero)
    common = _fpoly_gcd(gpoly, q)
    if len(common) != 2:
        raise ConsistencyViolation("adjunction gcd is not linear")
    a = -common[0]
    b = (gamma - a) / c
    if g(a) or p(b):
        raise ConsistencyViolation("adjunction images fail their defining equations")
    return _Adjunction(F, a, b, c, h)


class ConjugateContext:
    """Conjugation, real and imaginary parts for one base field.

    Attributes mirror the construction: ``cofactor`` is f(v)/(v - theta) over
    K, ``conj_embedding`` the mirrored rectangle, and ``splits`` the chain of
    moduli adjoined to reach the closed field ``closure``.
    """

    def __init__(self, base: NumberField, closure: NumberField, theta, theta_bar, i_unit,
                 conj_gen, splits, cofactor):
        self.base = base
        self.closure = closure
        object.__setattr__(closure, "_closure_of", base)
        self.theta = theta
        self.theta_bar = theta_bar
        self.i = i_unit
        self._conj_gen = conj_gen
        self.splits = tuple(splits)
        self.cofactor = cofactor
        self.conj_embedding = base.rect.mirrored()
        self._theta_powers = self._powers(theta, base.degree)
        self._theta_bar_powers = self._powers(theta_bar, base.degree)
        self._conj_gen_powers = self._powers(conj_gen, closure.degree)

    @staticmethod
    def _powers(x, n):
        out = [x.field.one]
        for _ in range(n - 1):
            out.append(out[-1] * x)
        return out

    @classmethod
    def build(cls, base: NumberField) -> "ConjugateContext":
        f = base.min_poly
        step1 = _adjoin(base, f, lambda bits: base.embedding(bits).conjugate())
        F1 = step1.field
        step2 = _adjoin(F1, RationalPolynomial((1, 0, 1)), lambda bits: Disk.point(0, 1))
        F = step2.field
        embed1 = cls._powers(step2.a, F1.degree)

        def push(x: FieldElement) -> FieldElement:
            acc = F.zero
            for c, pw in zip(x.coords, embed1):
                if c:
                    acc = acc + pw * c
            return acc

        theta = push(step1.a)
        theta_bar = push(step1.b)
        i_unit = step2.b
        # closure generator = theta + c1*theta_bar + c2*i
        conj_gen = theta_bar + theta * step1.multiplier - i_unit * step2.multiplier
        gen_check = theta + theta_bar * step1.multiplier + i_unit * step2.multiplier
        if gen_check != F.gen:
            raise ConsistencyViolation("closure generator mismatch")
        cofactor = _cofactor(base)
        return cls(base, F, theta, theta_bar, i_unit, conj_gen,
                   [step1.modulus, step2.modulus], cofactor)

    # --- maps ----------------------------------------------------------
    def lift(self, x: FieldElement) -> FieldElement:
        if x.field == self.closure:
            return x
        if x.field != self.base:
            raise ValueError("element is not in the base field")
        acc = self.closure.zero
        for c, pw in zip(x.coords, self._theta_powers):
            if c:
                acc = acc + pw * c
        return acc

    def conj(self, x: FieldElement) -> FieldElement:
        if x.field == self.base and x.field != self.closure:
            acc = self.closure.zero
            for c, pw in zip(x.coords, self._theta_bar_powers):
                if c:
                    acc = acc + pw * c
            return acc
        acc = self.closure.zero
        for c, pw in zip(x.coords, self._conj_gen_powers):
            if c:
                acc = acc + pw * c
        return acc

    def re(self, x: FieldElement) -> FieldElement:
        return (self.lift(x) + self.conj(x)) / 2

    def im(self, x: FieldElement) -> FieldElement:
        return (self.lift(x) - self.conj(x)) / (self.i * 2)

    def is_real(self, x: FieldElement) -> bool:
        return self.lift(x) == self.conj(x)

    def sign_real(self, x: FieldElement) -> int:
        """Certified sign of a real element: exact zero test, then refinement."""
        if not self.is_real(x):
            raise NotRealInput("sign_real needs a real element")
        if x.is_zero():
            return 0
        bits = DEFAULT_BITS
        while True:
            lo, hi = x.enclosure(bits).real_interval()
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    # --- fast certified signs for elements of the base field -------------
    def _sign_loop(self, interval: Callable[[int], tuple], exact_zero: Callable[[], bool]) -> int:
        bits = DEFAULT_BITS
        checked = False
        while True:
            lo, hi = interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if not checked:
                if exact_zero():
                    return 0
                checked = True
            bits *= 2

    def sign_im(self, x: FieldElement) -> int:
        """Sign of Im(x) for x in the base field."""
        return self._sign_loop(lambda b: x.enclosure(b).imag_interval(),
                               lambda: self.is_real(x))

    def sign_re_minus(self, x: FieldElement, q) -> int:
        """Sign of Re(x) - q for x in the base field and rational q."""
        q = mpq(q)
        y = x - q

        def interval(b):
            lo, hi = y.enclosure(b).real_interval()
            return lo, hi
        return self._sign_loop(interval, lambda: self.lift(y) == -self.conj(y))

    def sign_abs2_minus(self, x: FieldElement, q) -> int:
        """Sign of |x|^2 - q for x in the base field and rational q."""
        q = mpq(q)

        def interval(b):
            d = x.enclosure(b)
            c2 = cabs2(d.center)
            # |c| <= |Re c| + |Im c| avoids a square root
            slack = 2 * (abs(d.re) + abs(d.im)) * d.radius + d.radius ** 2
            return c2 - slack - q, c2 + slack - q
        return self._sign_loop(interval, lambda: self.lift(x) * self.conj(x) == q)


def _cofactor(base: NumberField) -> list:
    """Coefficients (over K) of f(v) / (v - theta), by synthetic division."""
    f = base.min_poly
    theta = base.gen
    out = []
    acc = base.zero
    for c in reversed(f.coefficients[1:]):
        acc = acc * theta + c
        out.append(acc)
    return list(reversed(out))


def conjugate_ops(ctx: ConjugateContext, x: FieldElement) -> dict:
    return {"conj": ctx.conj(x), "re": ctx.re(x), "im": ctx.im(x), "is_real": ctx.is_real(x)}
