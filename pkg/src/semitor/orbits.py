"""The action of PGL2(Q) on P1(k) for a cubic field k.

Orbit witnesses come from exact linear dependence: for x, y outside Q in a
cubic field the four elements 1, x, y, xy always satisfy a rational relation,
and any such relation is an invertible fractional-linear map sending x to y.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elliptic import IsogenyWitness
from .errors import ConsistencyViolation, NotCubicElement, QVanishes, ReducibleCubic
from .exact.field import FieldElement, minimal_polynomial, q_dependence
from .exact.linalg import integer_primitive_vector
from .exact.polynomial import RationalPolynomial
from .exact.rational import Q, mpq

__all__ = ["ProjectivePoint", "stabilizer_check", "orbit_matrix", "claim2_matrix", "same_orbit",
           "cubic_is_irreducible", "Claim2Result"]


@dataclass(frozen=True)
class ProjectivePoint:
    """[x : 1] for a field element x, or the point at infinity when x is None."""

    x: FieldElement | None = None

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def is_rational(self) -> bool:
        return self.x is None or self.x.is_rational()


def _require_cubic(x: FieldElement) -> None:
    if minimal_polynomial(x).degree != 3:
        raise NotCubicElement(f"{x} does not generate a cubic field")


def stabilizer_check(x: FieldElement) -> bool:
    """Only scalar matrices fix [x : 1]: 1, x, x^2 are Q-independent."""
    _require_cubic(x)
    return not q_dependence([x.field.one, x, x * x])


def orbit_matrix(x: FieldElement, y: FieldElement) -> IsogenyWitness:
    """Invertible rational A with A(x) = y."""
    _require_cubic(x)
    _require_cubic(y)
    rel = q_dependence([x.field.one, x, y, x * y])
    if not rel:
        raise ConsistencyViolation("1, x, y, xy independent inside a cubic field")
    q0, q1, q2, q3 = integer_primitive_vector(rel[0])
    A = IsogenyWitness(mpq(-q1), mpq(-q0), mpq(q3), mpq(q2)).normalized()
    if A.det == 0 or A.act(x) != y:
        raise ConsistencyViolation("orbit relation does not yield an invertible map")
    return A


def _rational_roots(coeffs_int: list[int]) -> list[mpq]:
    """Rational roots of an integer polynomial (ascending coefficients)."""
    if len(coeffs_int) <= 1:
        return []
    if coeffs_int[0] == 0:
        return [mpq(0)] + _rational_roots(coeffs_int[1:])
    a0, an = abs(coeffs_int[0]), abs(coeffs_int[-1])
    divs = lambda n: [d for d in range(1, n + 1) if n % d == 0]
    p = RationalPolynomial(coeffs_int)
    roots = []
    for num in divs(a0):
        for den in divs(an):
            for s in (1, -1):
                r = mpq(s * num, den)
                if p(r) == 0 and r not in roots:
                    roots.append(r)
    return roots


def cubic_is_irreducible(p0, p1, p2) -> bool:
    """t^3 - p2 t^2 - p1 t - p0 has no rational root (rational root test)."""
    poly = RationalPolynomial((-Q(p0), -Q(p1), -Q(p2), 1))
    return not _rational_roots(list(poly.integer_primitive()))


@dataclass(frozen=True)
class Claim2Result:
    matrix: IsogenyWitness
    q_value: mpq
    modulus: RationalPolynomial

    def identity_holds(self, lam) -> bool:
        """(lam t + t^2)(c t + d) = a t + b in Q[t]/(modulus)."""
        A = self.matrix
        t = RationalPolynomial.x()
        lhs = (t * Q(lam) + t * t) * (t * A.c + A.d)
        rhs = t * A.a + A.b
        return ((lhs - rhs) % self.modulus).is_zero()


def claim2_q(p0, p1, p2, lam) -> mpq:
    p0, p1, p2, lam = (Q(v) for v in (p0, p1, p2, lam))
    return -p1 * (lam + p2) + lam * (lam + p2) ** 2 - p0


def claim2_matrix(p0, p1, p2, lam) -> Claim2Result:
    """Matrix carrying [t : 1] to [lam t + t^2 : 1] where t^3 = p2 t^2 + p1 t + p0."""
    p0, p1, p2, lam = (Q(v) for v in (p0, p1, p2, lam))
    if not cubic_is_irreducible(p0, p1, p2):
        raise ReducibleCubic(f"t^3 - {p2} t^2 - {p1} t - {p0} has a rational root")
    c = mpq(1)
    d = -(lam + p2)
    a = p1 - lam * (lam + p2)
    b = p0
    A = IsogenyWitness(a, b, c, d)
    qv = claim2_q(p0, p1, p2, lam)
    if A.det != qv:
        raise ConsistencyViolation("det A differs from Q(lambda)")
    if qv == 0:
        raise QVanishes(f"Q({lam}) = 0")
    modulus = RationalPolynomial((-p0, -p1, -p2, 1))
    return Claim2Result(A, qv, modulus)


def same_orbit(x: ProjectivePoint, y: ProjectivePoint) -> bool:
    """Two orbits only: P1(Q) and its complement (cross-checked by an explicit matrix)."""
    rx, ry = x.is_rational(), y.is_rational()
    if rx or ry:
        return rx and ry
    orbit_matrix(x.x, y.x)
    return True
