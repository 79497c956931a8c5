"""Rank-3 lattices in C^2 with algebraic coordinates.

A lattice is stored by three generators in K^2. After normalization it reads
<e1, e2, (alpha, beta)>, and rational triples (m, n, p) name the lattice
combinations n*e1 + m*e2 + p*(alpha, beta) = (n + p*alpha, m + p*beta).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import mpmath

from .errors import (ConsistencyViolation, DegenerateSpan, DegenerateV, InHyperplane, InvalidInput,
                     NormalizationSearchExhausted, NotDiscreteOrRankDeficient, NotPrimitive)
from .exact import linalg
from .exact.field import FieldElement, NumberField, q_dependence
from .exact.integer import complete_to_unimodular, det, unimodular_inverse
from .exact.rational import Q, mpq

__all__ = ["SemiTorusLattice", "NormalizedLattice", "RelationSpace", "QuotientCurve", "QPlane",
           "validate", "normalize", "normalized_from_alpha_beta", "relation_space",
           "membership_H", "membership_H_numeric", "quotient_curve", "quotient_along",
           "enumerate_quotients", "e_plane", "e_plane_from_images", "psi_preimage",
           "canonical_triples"]

Vector = tuple  # (FieldElement, FieldElement)


@dataclass(frozen=True)
class SemiTorusLattice:
    field: NumberField
    generators: tuple  # three vectors in K^2

    def real_coordinate_matrix(self) -> list[list[FieldElement]]:
        """Rows (Re z1, Im z1, Re z2, Im z2), one per generator, in the conjugation closure."""
        ctx = self.field.conjugate_context
        return [[part(z) for z in g for part in (ctx.re, ctx.im)] for g in self.generators]

    def combination(self, coeffs: Sequence) -> Vector:
        z1 = self.field.zero
        z2 = self.field.zero
        for c, g in zip(coeffs, self.generators):
            if c:
                z1 = z1 + g[0] * c
                z2 = z2 + g[1] * c
        return (z1, z2)


def _as_element(field: NumberField, x) -> FieldElement:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise InvalidInput("generator entry lives in a different field")
        return x
    if isinstance(x, (list, tuple)):
        if len(x) > field.degree:
            raise InvalidInput(f"coordinate vector longer than the field degree {field.degree}")
        return field.element(x)
    return field.rational(x)


def validate(field: NumberField, generators: Sequence) -> SemiTorusLattice:
    """Check that three vectors of K^2 generate a discrete rank-3 group spanning C^2.

    Discreteness and Z-rank three are both equivalent to R-linear independence
    of the generators in C^2 = R^4, decided exactly in the conjugation closure.
    """
    if len(generators) != 3 or any(len(g) != 2 for g in generators):
        raise InvalidInput("a semi-torus lattice needs exactly three vectors of C^2")
    if not field.is_irreducible:
        raise InvalidInput(f"minimal polynomial {field.min_poly} is reducible over Q")
    gens = tuple(tuple(_as_element(field, z) for z in g) for g in generators)
    lattice = SemiTorusLattice(field, gens)
    if linalg.rank(lattice.real_coordinate_matrix()) < 3:
        raise NotDiscreteOrRankDeficient("generators are R-linearly dependent")
    if linalg.rank([[g[0] for g in gens], [g[1] for g in gens]]) < 2:
        raise DegenerateSpan("generators do not span C^2")
    return lattice


@dataclass(frozen=True)
class NormalizedLattice:
    """Gamma = <e1, e2, (alpha, beta)> after a basis change.

    ``recombination`` rows express the new generators in the old ones;
    ``coordinate_change`` is the 2x2 matrix P whose columns are the first two
    new generators, so an old-coordinate vector equals P applied to the new
    coordinates.
    """

    base: SemiTorusLattice
    alpha: FieldElement
    beta: FieldElement
    recombination: tuple
    coordinate_change: tuple

    @property
    def field(self) -> NumberField:
        return self.alpha.field

    def vector(self, triple: Sequence) -> Vector:
        m, n, p = (Q(x) for x in triple)
        return (self.alpha * p + n, self.beta * p + m)

    def to_original(self, v: Vector) -> Vector:
        (a, b), (c, d) = self.coordinate_change
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    def generators(self) -> tuple:
        F = self.field
        return ((F.one, F.zero), (F.zero, F.one), (self.alpha, self.beta))

    @cached_property
    def relations(self) -> "RelationSpace":
        return relation_space(self)

    def check(self) -> None:
        """Re-derive the normalized generators from the originals."""
        if abs(det(self.recombination)) != 1:
            raise ConsistencyViolation("recombination is not unimodular")
        for row, g in zip(self.recombination, self.generators()):
            if self.base.combination(row) != self.to_original(g):
                raise ConsistencyViolation("normalized generator mismatch")
        ctx = self.field.conjugate_context
        if ctx.is_real(self.alpha) or ctx.is_real(self.beta):
            raise ConsistencyViolation("alpha or beta is real")


def _value_order(h: int, diagonal: bool) -> list[int]:
    """Entries of height <= h, ordered by distance from the identity entry."""
    ident = 1 if diagonal else 0

    def key(v):
        d = v - ident
        return 2 * d - 1 if d > 0 else -2 * d
    return sorted(range(-h, h + 1), key=key)


def _candidate_rows(h: int, i: int) -> list[tuple]:
    orders = [_value_order(h, i == j) for j in range(3)]
    return list(itertools.product(*orders))


def _try_basis(lattice: SemiTorusLattice, rows) -> NormalizedLattice | None:
    g1, g2, g3 = (lattice.combination(r) for r in rows)
    D = g1[0] * g2[1] - g2[0] * g1[1]
    if not D:
        return None
    inv = D.inverse()
    # (alpha, beta) solves alpha*g1 + beta*g2 = g3
    alpha = (g3[0] * g2[1] - g2[0] * g3[1]) * inv
    beta = (g1[0] * g3[1] - g3[0] * g1[1]) * inv
    ctx = lattice.field.conjugate_context
    if ctx.sign_im(alpha) == 0 or ctx.sign_im(beta) == 0:
        return None
    change = ((g1[0], g2[0]), (g1[1], g2[1]))
    return NormalizedLattice(lattice, alpha, beta, tuple(tuple(r) for r in rows), change)


def normalize(lattice: SemiTorusLattice, max_height: int = 10) -> NormalizedLattice:
    """Search unimodular recombinations by height, identity-first within a height."""
    for h in range(1, max_height + 1):
        rows = [_candidate_rows(h, i) for i in range(3)]
        for r1 in rows[0]:
            for r2 in rows[1]:
                for r3 in rows[2]:
                    if max(max(map(abs, r)) for r in (r1, r2, r3)) != h:
                        continue
                    if abs(det((r1, r2, r3))) != 1:
                        continue
                    found = _try_basis(lattice, (r1, r2, r3))
                    if found is not None:
                        return found
    raise NormalizationSearchExhausted(
        f"no basis with non-real (alpha, beta) up to height {max_height}", max_height)


def normalize_with(lattice: SemiTorusLattice, recombination) -> NormalizedLattice:
    """Normalize along a given unimodular recombination (rows = new generators)."""
    if abs(det(recombination)) != 1:
        raise InvalidInput("recombination must be unimodular")
    found = _try_basis(lattice, recombination)
    if found is None:
        raise InvalidInput("recombination does not give non-real (alpha, beta)")
    return found


def normalized_from_alpha_beta(alpha: FieldElement, beta: FieldElement) -> NormalizedLattice:
    F = alpha.field
    lattice = validate(F, ((F.one, F.zero), (F.zero, F.one), (alpha, beta)))
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    found = _try_basis(lattice, ident)
    if found is None:
        raise InvalidInput("alpha and beta must both be non-real")
    return found


# --- relation space I -------------------------------------------------------

@dataclass(frozen=True)
class RelationSpace:
    dim: int
    basis: tuple           # rational triples (m, n, p)
    annihilator: tuple     # rational vectors w with I = {v : w . v = 0 for all w}
    functional: tuple      # (-Im alpha, Im beta, Im(conj(alpha) beta)) in the closure

    def contains(self, triple: Sequence) -> bool:
        v = [Q(x) for x in triple]
        return all(sum(a * b for a, b in zip(w, v)) == 0 for w in self.annihilator)


def relation_space(nl: NormalizedLattice) -> RelationSpace:
    """I = rational kernel of (m, n, p) -> -m Im(alpha) + n Im(beta) + p Im(conj(alpha) beta)."""
    ctx = nl.field.conjugate_context
    a, b = nl.alpha, nl.beta
    im_a, im_b = ctx.im(a), ctx.im(b)
    im_ab = ctx.im(ctx.conj(a) * ctx.lift(b))
    functional = (-im_a, im_b, im_ab)
    basis = tuple(tuple(v) for v in q_dependence(list(functional)))
    dependent = bool(q_dependence([nl.field.one, a, b]))
    if (len(basis) == 2) != dependent:
        raise ConsistencyViolation("dim I = 2 disagrees with Q-dependence of {1, alpha, beta}")
    if basis:
        annihilator = tuple(tuple(w) for w in linalg.kernel([list(v) for v in basis], 3))
    else:
        annihilator = tuple(tuple(mpq(int(i == j)) for i in range(3)) for j in range(3))
    return RelationSpace(len(basis), basis, annihilator, functional)


def membership_H(nl: NormalizedLattice, triple: Sequence) -> bool:
    """gamma_{m,n,p} in H, via the exact compatibility functional."""
    m, n, p = (Q(x) for x in triple)
    f = nl.relations.functional
    return not (f[0] * m + f[1] * n + f[2] * p)


def membership_H_numeric(nl: NormalizedLattice, triple: Sequence, dps: int = 60,
                         tol: str = "1e-40") -> bool:
    """Oracle: is i*gamma in the real span of e1, e2, (alpha, beta)? Least squares at high precision."""
    m, n, p = (Q(x) for x in triple)
    if not (m or n or p):
        return True
    with mpmath.workdps(dps):
        al = nl.alpha.approx(dps + 10)
        be = nl.beta.approx(dps + 10)
        q = lambda x: mpmath.mpf(int(x.numerator)) / int(x.denominator)
        g1 = q(n) + q(p) * al
        g2 = q(m) + q(p) * be
        target = [mpmath.re(1j * g1), mpmath.im(1j * g1), mpmath.re(1j * g2), mpmath.im(1j * g2)]
        A = mpmath.matrix([[1, 0, mpmath.re(al)], [0, 0, mpmath.im(al)],
                           [0, 1, mpmath.re(be)], [0, 0, mpmath.im(be)]])
        b = mpmath.matrix(target)
        # least squares through the normal equations; A has full column rank
        x = mpmath.lu_solve(A.T * A, A.T * b)
        return mpmath.norm(A * x - b) < mpmath.mpf(tol)


# --- quotient curves --------------------------------------------------------

@dataclass(frozen=True)
class QuotientCurve:
    triple: tuple
    functional: tuple       # coefficients of z1, z2
    images: tuple           # images of the three generators
    image_basis: tuple      # (omega1, omega2)
    basis_change: tuple     # unimodular B with B . images = (0, omega1, omega2)
    tau: object             # PeriodRatio

    def verify(self) -> bool:
        """Images and (omega1, omega2) generate the same Z-module."""
        B = self.basis_change
        Binv = unimodular_inverse(B)
        new = (self.images[0].field.zero,) + tuple(self.image_basis)
        for row, v in zip(B, new):
            if sum((x * c for x, c in zip(self.images, row)), self.images[0].field.zero) != v:
                return False
        for row, v in zip(Binv, self.images):
            if sum((x * c for x, c in zip(new, row)), new[0].field.zero) != v:
                return False
        return True


def quotient_along(field: NumberField, generators: Sequence, coeffs: Sequence[int],
                   triple=None) -> QuotientCurve:
    """Quotient by the complex line through the lattice vector sum coeffs_j g_j."""
    from .elliptic import period_ratio
    coeffs = tuple(int(c) for c in coeffs)
    if not any(coeffs):
        raise InvalidInput("zero lattice vector")
    if math.gcd(*coeffs) != 1:
        raise NotPrimitive(f"{coeffs} is not primitive")
    z1 = sum((g[0] * c for c, g in zip(coeffs, generators)), field.zero)
    z2 = sum((g[1] * c for c, g in zip(coeffs, generators)), field.zero)
    functional = (z2, -z1)
    images = tuple(functional[0] * g[0] + functional[1] * g[1] for g in generators)
    rel = q_dependence(list(images))
    if len(rel) != 1:
        raise InHyperplane("the complex line through gamma meets the lattice in rank > 1")
    if linalg.integer_primitive_vector(rel[0]) not in (coeffs, tuple(-c for c in coeffs)):
        raise ConsistencyViolation("image relation differs from the quotient vector")
    B = complete_to_unimodular(coeffs)
    new = [sum((x * c for x, c in zip(images, row)), field.zero) for row in B]
    if new[0]:
        raise ConsistencyViolation("first transformed image must vanish")
    tau = period_ratio(new[1], new[2])
    return QuotientCurve(tuple(triple if triple is not None else coeffs), functional, images,
                         (new[1], new[2]), tuple(tuple(r) for r in B), tau)


def quotient_curve(nl: NormalizedLattice, triple: Sequence[int]) -> QuotientCurve:
    """E_gamma for gamma = gamma_{m,n,p}; functional (m + p beta) z1 - (n + p alpha) z2."""
    m, n, p = (int(x) for x in triple)
    if (m, n, p) == (0, 0, 0):
        raise InvalidInput("zero triple")
    if math.gcd(m, n, p) != 1:
        raise NotPrimitive(f"{(m, n, p)} is not primitive")
    if nl.relations.contains((m, n, p)):
        raise InHyperplane(f"gamma_{(m, n, p)} lies in H")
    return quotient_along(nl.field, nl.generators(), (n, m, p), triple=(m, n, p))


def canonical_triples(height: int) -> Iterator[tuple]:
    """Primitive integer triples up to sign (first nonzero entry positive), lex order."""
    rng = range(-height, height + 1)
    for t in itertools.product(rng, repeat=3):
        if t == (0, 0, 0) or math.gcd(*t) != 1:
            continue
        if next(x for x in t if x) < 0:
            continue
        yield t


def _quotient_worker(args):
    nl, triple = args
    return quotient_curve(nl, triple)


def enumerate_quotients(nl: NormalizedLattice, height: int, jobs: int = 1) -> list[QuotientCurve]:
    triples = [t for t in canonical_triples(height) if not nl.relations.contains(t)]
    if jobs > 1 and len(triples) > 16:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_quotient_worker, [(nl, t) for t in triples], chunksize=8))
    return [quotient_curve(nl, t) for t in triples]


# --- Q-planes and the map (m, n, p) -> E_{m,n,p} ----------------------------

@dataclass(frozen=True)
class QPlane:
    """A 2-dimensional subspace of V = <1, alpha, beta>_Q, stored in reduced echelon form."""

    basis: tuple

    @classmethod
    def span(cls, vectors: Sequence[Sequence]) -> "QPlane":
        reduced, pivots = linalg.rref([[Q(x) for x in v] for v in vectors])
        if len(pivots) != 2:
            raise ValueError(f"vectors span a space of dimension {len(pivots)}, not 2")
        return cls(tuple(tuple(r) for r in reduced[:2]))

    def contains(self, v: Sequence) -> bool:
        return linalg.rank([list(self.basis[0]), list(self.basis[1]), [Q(x) for x in v]]) == 2

    @property
    def dimension(self) -> int:
        return linalg.rank([list(r) for r in self.basis])


def _require_V3(nl: NormalizedLattice) -> None:
    if q_dependence([nl.field.one, nl.alpha, nl.beta]):
        raise DegenerateV("{1, alpha, beta} is Q-linearly dependent")


def e_plane_matrix(triple: Sequence) -> list[list]:
    m, n, p = (Q(x) for x in triple)
    return [[m, mpq(0), p], [n, p, mpq(0)], [mpq(0), m, -n]]


def e_plane(nl: NormalizedLattice, triple: Sequence) -> QPlane:
    """<m + p beta, n + p alpha, m alpha - n beta>_Q in coordinates over {1, alpha, beta}."""
    _require_V3(nl)
    if not any(Q(x) for x in triple):
        raise InvalidInput("zero triple")
    return QPlane.span(e_plane_matrix(triple))


def coordinates_in_V(nl: NormalizedLattice, x: FieldElement) -> list:
    F = nl.field
    cols = [F.one, nl.alpha, nl.beta]
    mat = [[c.coords[i] for c in cols] for i in range(F.degree)]
    sol = linalg.solve(mat, list(x.coords))
    if sol is None:
        raise ValueError("element is not in <1, alpha, beta>_Q")
    return sol


def e_plane_from_images(nl: NormalizedLattice, triple: Sequence) -> QPlane:
    """Q-span of the images of the generators under the quotient functional."""
    _require_V3(nl)
    m, n, p = (Q(x) for x in triple)
    f1, f2 = nl.beta * p + m, -(nl.alpha * p + n)
    images = [f1 * g[0] + f2 * g[1] for g in nl.generators()]
    return QPlane.span([coordinates_in_V(nl, x) for x in images])


def psi_preimage(nl: NormalizedLattice, plane: QPlane) -> tuple:
    """A triple (m, n, p) with e_plane(m, n, p) = plane (integer, primitive)."""
    _require_V3(nl)
    b1, b2 = plane.basis
    one = (1, 0, 0)
    if plane.contains(one):
        # E = <1, m alpha - n beta>: take the vector of E with zero constant term
        v = _combination_with_zero(b1, b2, 0)
        m, n = v[1], -v[2]
        triple = (m, n, mpq(0))
    else:
        # E meets <1, alpha> in the line of n + p alpha, and <1, beta> in that of m + p beta
        x = _combination_with_zero(b1, b2, 2)
        y = _combination_with_zero(b1, b2, 1)
        triple = (y[0] / y[2], x[0] / x[1], mpq(1))
    out = linalg.integer_primitive_vector(triple)
    if not plane.contains(e_plane_matrix(out)[0]) or QPlane.span(e_plane_matrix(out)) != plane:
        raise ConsistencyViolation("psi preimage does not reproduce the plane")
    return out


def _combination_with_zero(b1, b2, k: int) -> list:
    """Nonzero vector of span(b1, b2) whose k-th coordinate vanishes."""
    if b2[k] == 0:
        return list(b2)
    lam = b1[k] / b2[k]
    return [x - lam * y for x, y in zip(b1, b2)]
