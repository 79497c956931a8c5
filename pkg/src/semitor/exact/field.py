"""Number fields Q[t]/(f) with a chosen complex embedding."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import mpmath

from ..errors import (ConsistencyViolation, FieldMismatch, NotSquarefree, RectNotIsolating,
                      ZeroDivisorFound, ZeroInput)
from . import linalg
from .intervals import DEFAULT_BITS, Disk, IntervalRect, isolate_all_roots, refine_root
from .polynomial import RationalPolynomial
from .rational import Q, mpq

__all__ = ["NumberField", "FieldElement", "Factor", "invert", "minimal_polynomial",
           "q_dependence", "generated_subfield", "field_create"]

_MAX_ISOLATION_BITS = 2048


@dataclass(frozen=True)
class Factor:
    """Witness that the modulus is reducible: a nontrivial monic divisor."""

    polynomial: RationalPolynomial


@dataclass(frozen=True, eq=False)
class NumberField:
    """Q[t]/(min_poly) together with the root of min_poly inside ``rect``.

    ``min_poly`` must be monic and squarefree. Reducible moduli are accepted;
    zero divisors surface in :func:`invert`.
    """

    min_poly: RationalPolynomial
    rect: IntervalRect
    _disk: Disk = dc_field(default=None, repr=False)
    _all_roots: tuple = dc_field(default=(), repr=False)

    def __post_init__(self):
        f = self.min_poly
        if f.degree < 1 or f.lc != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        if not f.is_squarefree():
            raise NotSquarefree(f"{f} is not squarefree")
        if self._disk is None:
            roots, chosen = _isolate_in_rect(f, self.rect)
            object.__setattr__(self, "_disk", chosen)
            object.__setattr__(self, "_all_roots", tuple(roots))
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_lock", threading.Lock())

    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("_lock", None)
        state.pop("_cache", None)
        state.pop("conjugate_context", None)
        state.pop("_reduction", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_lock", threading.Lock())

    # equality is structural so pickled copies compare equal
    def _key(self):
        return (self.min_poly.coefficients, self.rect)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @cached_property
    def _reduction(self) -> list[tuple]:
        """Coordinates of t**k mod f for k = d .. 2d-2."""
        d = self.degree
        rows = []
        cur = [mpq(0)] * d
        # t**d = -(f_0 + ... + f_{d-1} t**(d-1))
        cur = [-c for c in self.min_poly.coefficients[:d]]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            top = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            if top:
                cur = [a + top * b for a, b in zip(cur, rows[0])]
            rows.append(tuple(cur))
        return rows

    def element(self, coords: Sequence) -> "FieldElement":
        coords = [Q(c) for c in coords]
        if len(coords) > self.degree:
            return self.from_polynomial(RationalPolynomial(coords))
        coords += [mpq(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_polynomial(self, p: RationalPolynomial) -> "FieldElement":
        r = p % self.min_poly
        return self.element(r.coefficients)

    def rational(self, q) -> "FieldElement":
        return self.element([q])

    @cached_property
    def zero(self) -> "FieldElement":
        return self.rational(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.rational(1)

    @cached_property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self.rational(-self.min_poly.coefficients[0])
        return self.element([0, 1])

    # --- embedding -----------------------------------------------------
    def embedding(self, bits: int = DEFAULT_BITS) -> Disk:
        """Certified disk of radius <= 2**-bits around the embedded root."""
        if self._disk.radius <= mpq(1, 1 << bits):
            return self._disk
        with self._lock:
            hit = self._cache.get(bits)
            if hit is None:
                base = self._disk
                for b in sorted(self._cache):
                    if b < bits:
                        base = self._cache[b]
                hit = refine_root(self.min_poly, base, bits)
                self._cache[bits] = hit
        return hit

    @property
    def root_disks(self) -> tuple:
        return self._all_roots

    def theta_is_real(self) -> bool:
        """Exact: the mirrored disk meets only this root's isolating disk."""
        return self.conjugate_root_index() == self.root_index()

    def root_index(self) -> int:
        for i, d in enumerate(self._all_roots):
            if d.intersects(self._disk):
                return i
        raise ConsistencyViolation("embedded root not among isolated roots")

    def conjugate_root_index(self) -> int:
        mirror = self._disk.conjugate()
        hits = [i for i, d in enumerate(self._all_roots) if d.intersects(mirror)]
        if len(hits) != 1:
            raise ConsistencyViolation("conjugate root not uniquely located")
        return hits[0]

    @cached_property
    def is_irreducible(self) -> bool:
        import sympy
        t = sympy.Symbol("t")
        _, factors = sympy.factor_list(self.min_poly.to_sympy(t))
        return len(factors) == 1 and factors[0][1] == 1

    @cached_property
    def conjugate_context(self):
        owner = self.__dict__.get("_closure_of")
        if owner is not None:
            return owner.conjugate_context
        from .conjugate import ConjugateContext
        return ConjugateContext.build(self)

    def describe(self) -> dict:
        return {"min_poly": self.min_poly.to_strings(), "embedding": self.rect.to_strings()}

    def __repr__(self) -> str:
        return f"NumberField({self.min_poly})"


def _isolate_in_rect(f: RationalPolynomial, rect: IntervalRect):
    bits = DEFAULT_BITS
    while bits <= _MAX_ISOLATION_BITS:
        roots = isolate_all_roots(f, bits)
        touching = [d for d in roots if rect.intersects_disk(d)]
        if len(touching) == 0:
            raise RectNotIsolating(f"no root of {f} in the embedding rectangle")
        inside = [d for d in touching if rect.contains_disk(d)]
        if len(inside) > 1:
            raise RectNotIsolating(f"{len(inside)} roots of {f} in the embedding rectangle")
        if len(touching) == 1 and len(inside) == 1:
            return roots, inside[0]
        bits *= 2
    raise RectNotIsolating(f"a root of {f} lies on the rectangle boundary")


def field_create(min_poly: RationalPolynomial, rect: IntervalRect) -> NumberField:
    return NumberField(min_poly, rect)


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    coords: tuple

    # --- structure -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        try:
            other = Q(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coords[0] == other and not any(self.coords[1:])

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def polynomial(self) -> RationalPolynomial:
        return RationalPolynomial(self.coords)

    # --- arithmetic ----------------------------------------------------
    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements belong to different fields")
            return other
        return self.field.rational(other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            try:
                c = Q(other)
            except TypeError:
                return NotImplemented
            return FieldElement(self.field, tuple(a * c for a in self.coords))
        other = self._lift(other)
        d = self.field.degree
        prod = [mpq(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for k, c in enumerate(prod[d:]):
            if c:
                row = self.field._reduction[k]
                for j in range(d):
                    out[j] += c * row[j]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        r = invert(self)
        if isinstance(r, Factor):
            raise ZeroDivisorFound(r.polynomial)
        return r

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            c = Q(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # --- numerics ------------------------------------------------------
    def enclosure(self, bits: int = DEFAULT_BITS) -> Disk:
        """Certified disk containing the embedded value, radius about 2**-bits."""
        cache = self.__dict__.setdefault("_enclosures", {})
        if bits not in cache:
            cache[bits] = self._enclose(bits)
        return cache[bits]

    def _enclose(self, bits: int) -> Disk:
        extra = 8
        while True:
            theta = self.field.embedding(bits + extra)
            acc = Disk.point(0)
            for c in reversed(self.coords):
                acc = (acc * theta + c).rounded(bits + extra + 4)
            if acc.radius <= mpq(1, 1 << bits) or extra > 4 * bits + 256:
                return acc
            extra *= 2

    def approx(self, dps: int = 30):
        bits = int(dps * 3.33) + 16
        with mpmath.workdps(dps + 10):
            return self.enclosure(bits).to_mpc()

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"[{self.polynomial()}]"

    __str__ = __repr__


# --- operations ----------------------------------------------------------

def invert(x: FieldElement) -> FieldElement | Factor:
    """Inverse of x, or a nontrivial factor of the modulus if x is a zero divisor."""
    if x.is_zero():
        raise ZeroInput("cannot invert zero")
    field = x.field
    d = field.degree
    # columns x * theta^j; a unique solution of M y = e_0 is the inverse
    cols, col = [], x
    for _ in range(d):
        cols.append(col.coords)
        col = col * field.gen
    rows = [[cols[j][i] for j in range(d)] + [mpq(int(i == 0))] for i in range(d)]
    reduced, pivots = linalg.rref(rows)
    if len(pivots) == d and pivots[-1] < d:
        return FieldElement(field, tuple(reduced[i][d] for i in range(d)))
    g, s, _ = x.polynomial().xgcd(field.min_poly)
    if g.degree > 0:
        return Factor(g)
    return field.from_polynomial(s)


def _coordinate_matrix(xs: Sequence[FieldElement]) -> list[list]:
    d = xs[0].field.degree
    return [[x.coords[i] for x in xs] for i in range(d)]


def q_dependence(xs: Sequence[FieldElement]) -> list[tuple]:
    """Basis of the rational relations {q : sum q_i x_i = 0}."""
    if not xs:
        return []
    field = xs[0].field
    xs = [x if isinstance(x, FieldElement) else field.rational(x) for x in xs]
    for x in xs:
        if x.field != field:
            raise FieldMismatch("q_dependence needs elements of one field")
    return [tuple(v) for v in linalg.kernel(_coordinate_matrix(xs), len(xs))]


def q_rank(xs: Sequence[FieldElement]) -> int:
    return len(xs) - len(q_dependence(xs)) if xs else 0


def minimal_polynomial(x: FieldElement) -> RationalPolynomial:
    """First Q-linear dependence among 1, x, x^2, ..."""
    powers = [x.field.one]
    while True:
        powers.append(powers[-1] * x)
        rel = q_dependence(powers)
        if rel:
            # kernel of 1..x^k is one-dimensional once dependence first appears
            v = rel[0]
            return RationalPolynomial(v).monic()


def express_in_powers(y: FieldElement, n: int, x: FieldElement):
    """Rational coordinates c with x = sum c_k y**k (k < n), or None."""
    powers = [y.field.one]
    for _ in range(n - 1):
        powers.append(powers[-1] * y)
    mat = _coordinate_matrix(powers)
    return linalg.solve(mat, list(x.coords))


@dataclass(frozen=True)
class Subfield:
    degree: int
    primitive: FieldElement
    multipliers: tuple
    coordinates: tuple   # coordinates of each input in powers of ``primitive``
    min_poly: RationalPolynomial


def generated_subfield(xs: Sequence[FieldElement], cap: int = 50) -> Subfield:
    """Degree of Q(xs) with a primitive element x1 + c x2 + c^2 x3 + ... ."""
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one element")
    for c in range(cap + 1):
        mults = tuple(c ** k for k in range(len(xs)))
        y = xs[0].field.zero
        for m, x in zip(mults, xs):
            y = y + x * m
        mp = minimal_polynomial(y)
        coords = []
        for x in xs:
            sol = express_in_powers(y, mp.degree, x)
            if sol is None:
                break
            coords.append(tuple(sol))
        else:
            return Subfield(mp.degree, y, mults, tuple(coords), mp)
    raise ConsistencyViolation(f"no primitive element found with multiplier <= {cap}")
