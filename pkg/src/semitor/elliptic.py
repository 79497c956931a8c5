"""Period ratios, modular reduction, isomorphism and isogeny of C/<1, tau>."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyViolation, FieldMismatch, RealRatio
from .exact.field import FieldElement, minimal_polynomial, q_dependence
from .exact.linalg import integer_primitive_vector
from .exact.intervals import DEFAULT_BITS
from .exact.rational import Q, ceil_q, mpq

__all__ = ["PeriodRatio", "ModularMatrix", "IsogenyWitness", "period_ratio", "reduce_fundamental",
           "isomorphic", "isogenous", "cm_discriminant", "in_fundamental_domain"]


@dataclass(frozen=True)
class PeriodRatio:
    tau: FieldElement

    @classmethod
    def of(cls, tau: FieldElement) -> "PeriodRatio":
        if tau.field.conjugate_context.sign_im(tau) <= 0:
            raise RealRatio("period ratio must lie in the upper half-plane")
        return cls(tau)

    @property
    def field(self):
        return self.tau.field


@dataclass(frozen=True)
class ModularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("modular matrix must have determinant 1")

    @classmethod
    def identity(cls) -> "ModularMatrix":
        return cls(1, 0, 0, 1)

    def __matmul__(self, o: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                             self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "ModularMatrix":
        return ModularMatrix(self.d, -self.b, -self.c, self.a)

    def act(self, tau: FieldElement) -> FieldElement:
        return (tau * self.a + self.b) / (tau * self.c + self.d)

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class IsogenyWitness:
    """Rational (a, b; c, d), invertible, with (a tau1 + b)/(c tau1 + d) = tau2."""

    a: mpq
    b: mpq
    c: mpq
    d: mpq

    @property
    def det(self) -> mpq:
        return self.a * self.d - self.b * self.c

    def act(self, tau: FieldElement) -> FieldElement:
        return (tau * self.a + self.b) / (tau * self.c + self.d)

    def verifies(self, tau1: FieldElement, tau2: FieldElement) -> bool:
        # cross-multiplied; c tau1 + d never vanishes for non-real tau1
        return self.det != 0 and tau1 * self.a + self.b == tau2 * (tau1 * self.c + self.d)

    def __matmul__(self, o: "IsogenyWitness") -> "IsogenyWitness":
        return IsogenyWitness(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                              self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "IsogenyWitness":
        return IsogenyWitness(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> "IsogenyWitness":
        return IsogenyWitness(*integer_primitive_vector((self.a, self.b, self.c, self.d)))

    @classmethod
    def from_modular(cls, m: ModularMatrix) -> "IsogenyWitness":
        return cls(mpq(m.a), mpq(m.b), mpq(m.c), mpq(m.d))

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


def period_ratio(omega1: FieldElement, omega2: FieldElement) -> PeriodRatio:
    """omega2/omega1, negated if needed so that Im > 0."""
    if not omega1:
        raise RealRatio("omega1 is zero")
    tau = omega2 / omega1
    s = tau.field.conjugate_context.sign_im(tau)
    if s == 0:
        raise RealRatio("omega2/omega1 is real: the lattice is degenerate")
    return PeriodRatio(tau if s > 0 else -tau)


def _ceil_re_minus_half(tau: FieldElement) -> int:
    """ceil(Re(tau) - 1/2), exactly, so that Re(tau - k) lies in (-1/2, 1/2]."""
    ctx = tau.field.conjugate_context
    lo, hi = tau.enclosure(DEFAULT_BITS).real_interval()
    lo_k, hi_k = ceil_q(lo - mpq(1, 2)), ceil_q(hi - mpq(1, 2))
    if lo_k == hi_k:
        # ceiling is monotone, so the whole enclosure agrees
        return hi_k
    n = int((hi - mpq(1, 2)).numerator // (hi - mpq(1, 2)).denominator)  # floor of upper bound
    # at most a couple of integers are in range; walk down to the exact floor
    while ctx.sign_re_minus(tau, n + mpq(1, 2)) < 0:
        n -= 1
    # now n <= Re(tau) - 1/2
    return n if ctx.sign_re_minus(tau, n + mpq(1, 2)) == 0 else n + 1


def in_fundamental_domain(tau: FieldElement) -> bool:
    """Re in (-1/2, 1/2], |tau| >= 1, Re >= 0 when |tau| = 1."""
    ctx = tau.field.conjugate_context
    if ctx.sign_im(tau) <= 0:
        return False
    if ctx.sign_re_minus(tau, mpq(-1, 2)) <= 0 or ctx.sign_re_minus(tau, mpq(1, 2)) > 0:
        return False
    s = ctx.sign_abs2_minus(tau, 1)
    if s < 0:
        return False
    return not (s == 0 and ctx.sign_re_minus(tau, 0) < 0)


def reduce_fundamental(pr: PeriodRatio) -> tuple[PeriodRatio, ModularMatrix]:
    """Canonical representative M.tau of the SL2(Z)-orbit, with M."""
    tau = pr.tau
    ctx = tau.field.conjugate_context
    M = ModularMatrix.identity()
    S = ModularMatrix(0, -1, 1, 0)
    for _ in range(10_000):
        k = _ceil_re_minus_half(tau)
        if k:
            tau = tau - k
            M = ModularMatrix(1, -k, 0, 1) @ M
        s = ctx.sign_abs2_minus(tau, 1)
        if s < 0:
            tau = -tau.inverse()
            M = S @ M
            continue
        if s == 0 and ctx.sign_re_minus(tau, 0) < 0:
            tau = -tau.inverse()
            M = S @ M
        break
    else:
        raise ConsistencyViolation("reduction did not terminate")
    return PeriodRatio(tau), M


def _same_field(t1: PeriodRatio, t2: PeriodRatio) -> None:
    if t1.field != t2.field:
        raise FieldMismatch("period ratios must lie in one common field")


def isomorphic(t1: PeriodRatio, t2: PeriodRatio) -> ModularMatrix | None:
    """Modular M with M.tau1 = tau2, or None when the curves are not isomorphic."""
    _same_field(t1, t2)
    r1, m1 = reduce_fundamental(t1)
    r2, m2 = reduce_fundamental(t2)
    if r1.tau != r2.tau:
        return None
    return m2.inverse() @ m1


def isogenous(t1: PeriodRatio, t2: PeriodRatio) -> IsogenyWitness | None:
    """Rational fractional-linear map tau1 -> tau2, from a relation among 1, tau1, tau2, tau1*tau2."""
    _same_field(t1, t2)
    x, y = t1.tau, t2.tau
    rel = q_dependence([x.field.one, x, y, x * y])
    if not rel:
        return None
    q0, q1, q2, q3 = integer_primitive_vector(rel[0])
    # q0 + q1 x + q2 y + q3 x y = 0  <=>  y (q3 x + q2) = -q1 x - q0
    w = IsogenyWitness(mpq(-q1), mpq(-q0), mpq(q3), mpq(q2)).normalized()
    if not w.verifies(x, y):
        raise ConsistencyViolation("isogeny relation gives a singular or wrong matrix")
    return w


def cm_discriminant(pr: PeriodRatio) -> int | None:
    mp = minimal_polynomial(pr.tau)
    if mp.degree != 2:
        return None
    c, b, a = mp.integer_primitive()
    return b * b - 4 * a * c
