"""Decision procedure for the isogeny behaviour of quotient curves.

A rank-3 lattice falls in exactly one reported class:

* SplitProduct: the relation space has dimension 2, T = C* x E;
* CubicArithmetic: otherwise, and Q(alpha, beta) is a cubic field;
* Generic: otherwise; two non-isogenous quotient curves are exhibited.
"""

from __future__ import annotations

import math
from operator import mul
from dataclasses import dataclass, field
from typing import Sequence

from .elliptic import (IsogenyWitness, PeriodRatio, isogenous, isomorphic, period_ratio,
                       reduce_fundamental)
from .errors import (ConsistencyViolation, InvalidInput, NotSplit, WitnessSearchExhausted,
                     WrongOrientation)
from .exact.field import FieldElement, generated_subfield, q_dependence
from .exact.integer import integer_kernel_of_vector
from .exact.linalg import integer_primitive_vector, kernel
from .exact.rational import ceil_q, floor_q, mpq
from .lattice import (NormalizedLattice, QuotientCurve, SemiTorusLattice, canonical_triples,
                      enumerate_quotients, normalize, quotient_along, quotient_curve)

__all__ = ["SplitProduct", "CubicArithmetic", "Generic", "classify", "split_construction",
           "nonisomorphic_witness", "nonisomorphic_witness_for_lattice", "isogeny_class_report",
           "IsogenyClassReport", "NonIsomorphicWitness", "generic_witness"]


@dataclass(frozen=True)
class SplitProduct:
    normalized: NormalizedLattice
    gamma0: tuple                # integer triple (m, n, p)
    gamma0_vector: tuple         # in original coordinates
    h_triples: tuple             # integer triples spanning H cap Gamma
    h_basis: tuple               # the same two vectors in original coordinates
    functional: tuple            # coefficients of z1, z2 (original coordinates), vanishing on H
    chart_ratio: FieldElement    # h2 = mu * h1
    e_tau: PeriodRatio           # reduced
    also_cubic: bool
    tag: str = "SplitProduct"


@dataclass(frozen=True)
class CubicArithmetic:
    normalized: NormalizedLattice
    primitive_element: FieldElement
    primitive_min_poly: object
    reference_tau: PeriodRatio
    tag: str = "CubicArithmetic"


@dataclass(frozen=True)
class Generic:
    normalized: NormalizedLattice
    degree: int
    triples: tuple | None
    taus: tuple | None
    certificate_height: int | None
    exhausted: bool = False
    tag: str = "Generic"


# --- split case -------------------------------------------------------------

def split_construction(nl: NormalizedLattice) -> SplitProduct:
    """T = C* x H/(H cap Gamma) with explicit gamma0 and a basis of H cap Gamma."""
    I = nl.relations
    if I.dim != 2:
        raise NotSplit(f"relation space has dimension {I.dim}")
    normal = integer_primitive_vector(I.annihilator[0])
    h_triples = tuple(tuple(v) for v in integer_kernel_of_vector(normal))
    h1, h2 = (nl.vector(t) for t in h_triples)
    F = nl.field
    # chart of the complex line H: h2 = mu * h1
    mu = h2[0] / h1[0] if h1[0] else h2[1] / h1[1]
    if (h1[0] * mu, h1[1] * mu) != h2:
        raise ConsistencyViolation("H cap Gamma does not lie on one complex line")
    e_tau, _ = reduce_fundamental(period_ratio(F.one, mu))
    # functional vanishing on H; image of Gamma is infinite cyclic
    phi = (h1[1], -h1[0])
    values = [phi[0] * g[0] + phi[1] * g[1] for g in nl.generators()]
    gamma0_coeffs = _cyclic_generator(values)
    # coefficient vector (n, m, p) over e1, e2, (alpha, beta) -> triple (m, n, p)
    n0, m0, p0 = gamma0_coeffs
    gamma0 = (m0, n0, p0)
    basis_rows = [(t[1], t[0], t[2]) for t in h_triples] + [gamma0_coeffs]
    from .exact.integer import det
    if abs(det(basis_rows)) != 1:
        raise ConsistencyViolation("gamma0 and H cap Gamma do not form a basis of Gamma")
    (a, b), (c, d) = nl.coordinate_change
    orig_phi = _pull_back_functional(phi, nl)
    sub = generated_subfield([nl.alpha, nl.beta])
    return SplitProduct(
        normalized=nl,
        gamma0=gamma0,
        gamma0_vector=nl.to_original(nl.vector(gamma0)),
        h_triples=h_triples,
        h_basis=(nl.to_original(h1), nl.to_original(h2)),
        functional=orig_phi,
        chart_ratio=mu,
        e_tau=e_tau,
        also_cubic=sub.degree == 3,
    )


def _pull_back_functional(phi, nl: NormalizedLattice) -> tuple:
    """phi in new coordinates -> functional in original coordinates (phi o P^-1)."""
    (a, b), (c, d) = nl.coordinate_change
    D = a * d - b * c
    inv = ((d / D, -b / D), (-c / D, a / D))
    return (phi[0] * inv[0][0] + phi[1] * inv[1][0], phi[0] * inv[0][1] + phi[1] * inv[1][1])


def _cyclic_generator(values: Sequence[FieldElement]) -> tuple:
    """Integer coefficients c with sum c_j v_j generating the rank-1 group Z v_1 + Z v_2 + Z v_3."""
    ref = next(v for v in values if v)
    ratios = []
    for v in values:
        r = v / ref
        if not r.is_rational():
            raise ConsistencyViolation("projection of Gamma is not of rank one")
        ratios.append(r.rational_value())
    den = 1
    for r in ratios:
        den = den * int(r.denominator) // math.gcd(den, int(r.denominator))
    ints = [int(r * den) for r in ratios]
    # extended gcd across the three integers
    from .exact.integer import xgcd
    g, s, t = xgcd(ints[0], ints[1])
    g2, u, w = xgcd(g, ints[2])
    return (u * s, u * t, w)


# --- non-isomorphic quotient curves ------------------------------------------

@dataclass(frozen=True)
class NonIsomorphicWitness:
    m: int
    n: int
    alpha: FieldElement
    tau: FieldElement
    tau_m: PeriodRatio
    tau_n: PeriodRatio
    reduced_m: PeriodRatio
    reduced_n: PeriodRatio
    threshold_ceiling: int

    def verify(self) -> bool:
        ctx = self.tau.field.conjugate_context
        for k in (self.m, self.n):
            if ctx.sign_real(ctx.im(self.tau * k - self.alpha) - 1) <= 0:
                return False
        return (self.reduced_m.tau != self.reduced_n.tau
                and not (self.tau * (self.m - self.n)).is_rational())


def _ceil_real(x: FieldElement) -> int:
    """Exact ceiling of a real element of the conjugation closure."""
    ctx = x.field.conjugate_context
    lo, hi = x.enclosure(60).real_interval()
    n = ceil_q(lo)
    while True:
        s = ctx.sign_real(x - n)
        if s <= 0:
            return n
        n += 1


def nonisomorphic_witness(alpha: FieldElement, tau: FieldElement) -> NonIsomorphicWitness:
    """Two quotients of <e1, e2, (alpha, tau)> along (m, 1) and (n, 1) that are not isomorphic."""
    ctx = tau.field.conjugate_context
    s = ctx.sign_im(tau)
    if s < 0:
        raise WrongOrientation("Im(tau) < 0: negate the third generator first")
    if s == 0:
        raise InvalidInput("tau is real; the lattice is not discrete")
    threshold = (ctx.im(alpha) + 1) / ctx.im(tau)
    c = _ceil_real(threshold)
    n = c + 1
    m = n + 1
    F = tau.field
    # functional k z2 - z1 sends the generators to -1, k, k tau - alpha
    taus = []
    for k in (m, n):
        lam = tau * k - alpha
        pr = period_ratio(F.one, lam)
        if pr.tau != lam:
            raise ConsistencyViolation("k tau - alpha should already lie in the upper half-plane")
        if ctx.sign_real(ctx.im(lam) - 1) <= 0:
            raise ConsistencyViolation("Im(k tau - alpha) must exceed 1")
        taus.append(pr)
    r_m, _ = reduce_fundamental(taus[0])
    r_n, _ = reduce_fundamental(taus[1])
    if r_m.tau == r_n.tau or isomorphic(taus[0], taus[1]) is not None:
        raise ConsistencyViolation("quotients along (m,1) and (n,1) turned out isomorphic")
    if (tau * (m - n)).is_rational():
        raise ConsistencyViolation("(m - n) tau is an integer")
    return NonIsomorphicWitness(m, n, alpha, tau, taus[0], taus[1], r_m, r_n, c)


def nonisomorphic_witness_for_lattice(nl: NormalizedLattice) -> NonIsomorphicWitness:
    """Orient <e1, e2, (alpha, beta)> so that the second coordinate has Im > 0, then witness."""
    ctx = nl.field.conjugate_context
    alpha, beta = nl.alpha, nl.beta
    if ctx.sign_im(beta) < 0:
        alpha, beta = -alpha, -beta
    return nonisomorphic_witness(alpha, beta)


# --- generic witness ----------------------------------------------------------

def generic_witness(nl: NormalizedLattice, cap: int = 6):
    """Two non-isogenous quotient curves, coordinate projections first, then by height."""
    I = nl.relations
    first = [(0, 1, 0), (1, 0, 0)]
    if not any(I.contains(t) for t in first):
        a, b = (quotient_curve(nl, t) for t in first)
        if isogenous(a.tau, b.tau) is None:
            return (a, b, 1)
    for h in range(1, cap + 1):
        curves = [quotient_curve(nl, t) for t in canonical_triples(h) if not I.contains(t)]
        classes = _isogeny_classes([c.tau for c in curves])
        if len(classes) > 1:
            i = classes[0].members[0]
            j = classes[1].members[0]
            return (curves[i], curves[j], h)
    return None


# --- classification -----------------------------------------------------------

def classify(lattice: SemiTorusLattice | NormalizedLattice, norm_height: int = 10,
             witness_cap: int = 6):
    nl = lattice if isinstance(lattice, NormalizedLattice) else normalize(lattice, norm_height)
    I = nl.relations
    if I.dim == 2:
        return split_construction(nl)
    sub = generated_subfield([nl.alpha, nl.beta])
    if sub.degree <= 2:
        raise ConsistencyViolation("{1, alpha, beta} independent but Q(alpha, beta) has degree <= 2")
    if sub.degree == 3:
        prim = nl.alpha if not q_dependence([nl.field.one, nl.alpha, nl.alpha * nl.alpha]) \
            else sub.primitive
        return CubicArithmetic(nl, prim, sub.min_poly, period_ratio(nl.field.one, prim))
    found = generic_witness(nl, witness_cap)
    if found is None:
        return Generic(nl, sub.degree, None, None, None, exhausted=True)
    a, b, h = found
    return Generic(nl, sub.degree, (a.triple, b.triple), (a.tau, b.tau), h)


# --- isogeny class report ------------------------------------------------------

@dataclass
class _Class:
    representative: int
    members: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)   # member -> witness rep -> member


class _ClassFilter:
    """Fast exact test of [1, r, tau, tau r] having rank < 4 for a fixed r.

    P annihilates span{1, r}; the test reduces to P tau and P (r tau) being
    parallel. Rows are scaled to integers, and so is tau, since parallelism
    is unaffected by scaling.
    """

    def __init__(self, r: FieldElement):
        F = r.field
        d = F.degree
        self.P = [_integer_row(p) for p in kernel_rows([F.one.coords, r.coords], d)]
        mult = []
        col = r
        for _ in range(d):
            mult.append(col.coords)
            col = col * F.gen
        PM = [[sum(p[i] * mult[j][i] for i in range(d)) for j in range(d)] for p in self.P]
        # one common scale for all rows keeps u_k and v_k comparable
        flat = _integer_row([c for row in PM for c in row])
        self.PM = [flat[k * d:(k + 1) * d] for k in range(len(PM))]

    def maybe_isogenous(self, x: tuple) -> bool:
        """x: integer multiple of the coordinates of tau."""
        u = [sum(map(mul, p, x)) for p in self.P]
        v = [sum(map(mul, p, x)) for p in self.PM]
        if len(u) == 2:
            return u[0] * v[1] == u[1] * v[0]
        return all(u[i] * v[j] == u[j] * v[i]
                   for i in range(len(u)) for j in range(i + 1, len(u)))


def _integer_row(row) -> tuple:
    den = 1
    for c in row:
        den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
    return tuple(int(c * den) for c in row)


def kernel_rows(vectors, d):
    """Rows spanning the annihilator of the given coordinate vectors."""
    return kernel([list(v) for v in vectors], d)


def _isogeny_classes(taus: Sequence[PeriodRatio]) -> list[_Class]:
    classes: list[_Class] = []
    filters: list[_ClassFilter] = []
    for idx, t in enumerate(taus):
        x = _integer_row(t.tau.coords)
        for cl, flt in zip(classes, filters):
            if not flt.maybe_isogenous(x):
                continue
            w = isogenous(taus[cl.representative], t)
            if w is None:
                raise ConsistencyViolation("fast isogeny filter disagrees with exact dependence")
            cl.members.append(idx)
            cl.witnesses[idx] = w
            break
        else:
            one = IsogenyWitness(mpq(1), mpq(0), mpq(0), mpq(1))
            classes.append(_Class(idx, [idx], {idx: one}))
            filters.append(_ClassFilter(t.tau))
    return classes


@dataclass
class IsogenyClassReport:
    height: int
    curves: list                   # QuotientCurve
    reduced: list                  # PeriodRatio per curve
    classes: list                  # _Class
    all_isogenous: bool
    classification: object

    def class_of(self, i: int) -> _Class:
        return next(c for c in self.classes if i in c.witnesses)

    def entry(self, i: int, j: int) -> IsogenyWitness | None:
        """Witness tau_i -> tau_j, composed through the class representative."""
        ci, cj = self.class_of(i), self.class_of(j)
        if ci is not cj:
            return None
        return (cj.witnesses[j] @ ci.witnesses[i].inverse()).normalized()

    def matrix(self) -> list[list]:
        n = len(self.curves)
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def first_failing_pair(self):
        if self.all_isogenous:
            return None
        # the classification's own witness pair takes precedence when enumerated
        pair = getattr(self.classification, "triples", None)
        if pair:
            index = {c.triple: k for k, c in enumerate(self.curves)}
            if all(t in index for t in pair) and self.entry(index[pair[0]], index[pair[1]]) is None:
                return pair
        i = self.classes[0].members[0]
        j = self.classes[1].members[0]
        return (self.curves[i].triple, self.curves[j].triple)


def isogeny_class_report(lattice, height: int = 3, norm_height: int = 10,
                         witness_cap: int = 6, jobs: int = 1,
                         classification=None) -> IsogenyClassReport:
    cls = classification if classification is not None else classify(lattice, norm_height,
                                                                       witness_cap)
    nl = cls.normalized
    curves = enumerate_quotients(nl, height, jobs=jobs)
    reduced = [reduce_fundamental(c.tau)[0] for c in curves]
    classes = _isogeny_classes([c.tau for c in curves])
    all_iso = len(classes) <= 1
    expected = cls.tag in ("SplitProduct", "CubicArithmetic")
    if all_iso != expected and not (cls.tag == "Generic" and all_iso and getattr(cls, "exhausted", False)):
        raise ConsistencyViolation(
            f"all_isogenous={all_iso} at height {height} but classification is {cls.tag}")
    return IsogenyClassReport(height, curves, reduced, classes, all_iso, cls)
