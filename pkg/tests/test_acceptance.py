"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time

import mpmath
import pytest
import sympy

from semitor.classifier import (CubicArithmetic, Generic, SplitProduct, classify, isogeny_class_report,
                                nonisomorphic_witness)
from semitor.elliptic import ModularMatrix, PeriodRatio, in_fundamental_domain, isogenous, isomorphic, \
    reduce_fundamental
from semitor.errors import ConsistencyViolation, NotDiscreteOrRankDeficient, QVanishes, SemitorError
from semitor.exact import invert, minimal_polynomial, mpq, sign_real
from semitor.exact.field import q_rank
from semitor.exact.integer import det
from semitor.lattice import (e_plane, e_plane_from_images, membership_H, membership_H_numeric, normalize,
                             psi_preimage, validate)
from semitor.orbits import claim2_matrix, cubic_is_irreducible, orbit_matrix, stabilizer_check

from conftest import (cubic_field, cubic_lattice, cyclotomic8_field, gaussian_field, generic_lattice,
                      imag_quadratic_field, random_element, real_cubic_field, scramble, split_lattice)

SEED = 20261017


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def upper(K, rng, height=5, den=3):
    ctx = K.conjugate_context
    while True:
        x = random_element(K, rng, height, den)
        s = ctx.sign_im(x)
        if s:
            return x if s > 0 else -x


def random_modular(rng, steps=6):
    M = ModularMatrix.identity()
    for _ in range(steps):
        M = ModularMatrix(1, rng.randint(-3, 3), 0, 1) @ M
        if rng.random() < 0.7:
            M = ModularMatrix(0, -1, 1, 0) @ M
    return M


def check_split(sp):
    nl = sp.normalized
    f, g = sp.functional, sp.gamma0_vector
    rows = [(t[1], t[0], t[2]) for t in sp.h_triples] + [(sp.gamma0[1], sp.gamma0[0], sp.gamma0[2])]
    return (all(membership_H(nl, t) for t in sp.h_triples)
            and all(f[0] * h[0] + f[1] * h[1] == 0 for h in sp.h_basis)
            and f[0] * g[0] + f[1] * g[1] != 0
            and abs(det(rows)) == 1
            and sp.h_basis[1] == (sp.h_basis[0][0] * sp.chart_ratio, sp.h_basis[0][1] * sp.chart_ratio))


# 1 ------------------------------------------------------------------------------

def test_criterion_1_fixture_trichotomy(verdict):
    expected = [(split_lattice, SplitProduct), (cubic_lattice, CubicArithmetic),
                (generic_lattice, Generic)]
    times, ok = [], True
    for build, kind in expected:
        t0 = time.perf_counter()
        cls = classify(build())
        times.append(time.perf_counter() - t0)
        ok &= isinstance(cls, kind) and not getattr(cls, "exhausted", False)
    ok &= max(times) < 5
    verdict(1, ok, "classes SplitProduct/CubicArithmetic/Generic, times "
            + ", ".join(f"{t:.2f}s" for t in times))


# 2 ------------------------------------------------------------------------------

def test_criterion_2_both_directions(verdict):
    rng = random.Random(SEED)
    bases = [split_lattice(), cubic_lattice(), generic_lattice()]
    lattices = list(bases)
    for base in bases:
        lattices += [scramble(base, rng)[0] for _ in range(50)]
    t0 = time.perf_counter()
    failures = violations = 0
    for L in lattices:
        try:
            rep = isogeny_class_report(L, height=4)
        except ConsistencyViolation:
            violations += 1
            continue
        expected = rep.classification.tag in ("SplitProduct", "CubicArithmetic")
        failures += rep.all_isogenous != expected
    elapsed = time.perf_counter() - t0
    verdict(2, failures == 0 and violations == 0 and elapsed < 60,
            f"{len(lattices)} reports at height 4, {failures} mismatches, "
            f"{violations} consistency violations, {elapsed:.1f}s")


# 3 ------------------------------------------------------------------------------

def test_criterion_3_quadratic_fields(verdict):
    rng = random.Random(SEED + 3)
    bad, total = [], 0
    for n in (1, 2, 3, 7):
        K = imag_quadratic_field(n)
        root = PeriodRatio.of(K.gen)
        made = 0
        while made < 10:
            gens = [(random_element(K, rng, 3, 2), random_element(K, rng, 3, 2)) for _ in range(3)]
            try:
                L = validate(K, gens)
            except NotDiscreteOrRankDeficient:
                continue
            made += 1
            total += 1
            sp = classify(L)
            if not isinstance(sp, SplitProduct) or not check_split(sp):
                bad.append((n, "split"))
                continue
            w = isogenous(sp.e_tau, root)
            if w is None or not w.verifies(sp.e_tau.tau, root.tau):
                bad.append((n, "isogeny"))
    verdict(3, not bad, f"{total} lattices over Q(sqrt(-n)), n in 1,2,3,7; failures {bad}")


# 4 ------------------------------------------------------------------------------

def test_criterion_4_cubic_orbits(verdict):
    rng = random.Random(SEED + 4)
    failures = 0
    for K in (cubic_field(), real_cubic_field()):
        pairs = 0
        while pairs < 50:
            x, y = random_element(K, rng, 5, 1), random_element(K, rng, 5, 1)
            if x.is_rational() or y.is_rational():
                continue
            pairs += 1
            try:
                A = orbit_matrix(x, y)
                ok = A.det != 0 and A.act(x) == y and stabilizer_check(x)
            except SemitorError:
                ok = False
            failures += not ok
    verdict(4, failures == 0, f"100 pairs in t^3-2 and t^3-t-1, {failures} failures")


# 5 ------------------------------------------------------------------------------

def test_criterion_5_claim2_identity(verdict):
    rng = random.Random(SEED + 5)
    done = failures = 0
    while done < 100:
        p = [rng.randint(-10, 10) for _ in range(3)]
        lam = mpq(rng.randint(-6, 6), rng.randint(1, 4))
        if not cubic_is_irreducible(*p):
            continue
        try:
            r = claim2_matrix(*p, lam)
        except QVanishes:
            continue
        done += 1
        failures += not (r.identity_holds(lam) and r.matrix.det == r.q_value)
    verdict(5, failures == 0, f"{done} irreducible cubics, {failures} failures")


# 6 ------------------------------------------------------------------------------

def test_criterion_6_strip_and_reduction(verdict):
    rng = random.Random(SEED + 6)
    fields = [gaussian_field(), cubic_field(), cyclotomic8_field()]
    strip_fail = 0
    for k in range(50):
        K = fields[k % 3]
        ctx = K.conjugate_context

        def above_one():
            t = upper(K, rng)
            while ctx.sign_real(ctx.im(t) - 1) <= 0:
                t = t * 2
            return t
        a = above_one()
        choice = k % 3
        if choice == 0:
            b = a + rng.randint(-4, 4)
        elif choice == 1:
            b = a + mpq(rng.randint(1, 7), rng.choice([2, 3, 5])) * rng.choice([1, -1])
        else:
            b = above_one()
        d = a - b
        integral = d.is_rational() and d.rational_value().denominator == 1
        iso = isomorphic(PeriodRatio(a), PeriodRatio(b)) is not None
        same = reduce_fundamental(PeriodRatio(a))[0].tau == reduce_fundamental(PeriodRatio(b))[0].tau
        strip_fail += not (iso == integral == same)
    red_fail = 0
    for k in range(200):
        K = fields[k % 3]
        tau = PeriodRatio(upper(K, rng, 6, 4))
        r, M = reduce_fundamental(tau)
        r2, M2 = reduce_fundamental(r)
        moved = PeriodRatio.of(random_modular(rng).act(tau.tau))
        ok = (in_fundamental_domain(r.tau) and M.act(tau.tau) == r.tau and r2.tau == r.tau
              and M2 == ModularMatrix.identity() and reduce_fundamental(moved)[0].tau == r.tau)
        red_fail += not ok
    verdict(6, strip_fail == 0 and red_fail == 0,
            f"50 strip pairs ({strip_fail} failures), 200 reductions ({red_fail} failures)")


# 7 ------------------------------------------------------------------------------

def test_criterion_7_nonisomorphic_quotients(verdict):
    rng = random.Random(SEED + 7)
    fields = [gaussian_field(), cubic_field(), cyclotomic8_field()]
    failures = split_checked = 0
    for k in range(20):
        K = fields[k % 3]
        alpha, tau = random_element(K, rng, 4, 2), upper(K, rng, 4, 2)
        validate(K, [(1, 0), (0, 1), (alpha, tau)])
        w = nonisomorphic_witness(alpha, tau)
        ok = w.verify() and isomorphic(w.tau_m, w.tau_n) is None
        if K is fields[0]:
            split_checked += 1
            iso = isogenous(w.tau_m, w.tau_n)
            ok &= iso is not None and iso.verifies(w.tau_m.tau, w.tau_n.tau)
        failures += not ok
    verdict(7, failures == 0, f"20 lattices, {split_checked} over Q(i) also isogenous, {failures} failures")


# 8 ------------------------------------------------------------------------------

def test_criterion_8_psi(verdict):
    rng = random.Random(SEED + 8)
    nl = normalize(cubic_lattice())
    failures = done = 0
    while done < 500:
        t = tuple(mpq(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
        if not any(t):
            continue
        done += 1
        E = e_plane(nl, t)
        back = psi_preimage(nl, E)
        ok = (E.dimension == 2 and e_plane(nl, back) == E and e_plane_from_images(nl, t) == E
              and all(back[i] * t[j] == back[j] * t[i] for i in range(3) for j in range(3)))
        failures += not ok
    verdict(8, failures == 0, f"{done} triples, {failures} failures")


# 9 ------------------------------------------------------------------------------

def test_criterion_9_membership_oracle(verdict):
    rng = random.Random(SEED + 9)
    failures = []
    for name, build in (("split", split_lattice), ("cubic", cubic_lattice), ("generic", generic_lattice)):
        nl = normalize(build())
        basis = nl.relations.basis
        for k in range(100):
            if basis and k % 2 == 0:
                t = [sum(mpq(rng.randint(-5, 5), rng.randint(1, 3)) * v[i] for v in basis) for i in range(3)]
            else:
                t = [mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)]
            if membership_H(nl, t) != membership_H_numeric(nl, t, dps=60, tol="1e-40"):
                failures.append((name, tuple(t)))
    verdict(9, not failures, f"300 triples against the numeric oracle, {len(failures)} disagreements")


# 10 -----------------------------------------------------------------------------

def test_criterion_10_kernel_soundness(verdict):
    rng = random.Random(SEED + 10)
    fields = [gaussian_field(), cubic_field(), cyclotomic8_field(), real_cubic_field()]
    t0 = time.perf_counter()
    failures = 0
    for k in range(100):
        K = fields[k % 4]
        ctx = K.conjugate_context
        x, y = random_element(K, rng, 6, 3), random_element(K, rng, 6, 3)
        ok = True
        if x:
            ok &= x * invert(x) == K.one
        f = minimal_polynomial(x)
        ok &= f(x) == K.zero and K.degree % f.degree == 0
        ok &= sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                          for c in reversed(f.coefficients)], sympy.Symbol("x")).is_irreducible
        vals = [K.one, x, y, x * y, x + 2 * y]
        rows = sympy.Matrix([[sympy.Rational(int(c.numerator), int(c.denominator)) for c in v.coords]
                             for v in vals])
        ok &= q_rank(vals) == rows.rank()
        ok &= ctx.conj(x * y) == ctx.conj(x) * ctx.conj(y)
        ok &= ctx.conj(x + y) == ctx.conj(x) + ctx.conj(y)
        ok &= ctx.conj(ctx.conj(x)) == ctx.lift(x)
        r = ctx.lift(x) + ctx.conj(x) - ctx.lift(y) - ctx.conj(y)
        with mpmath.workdps(50):
            approx = 2 * mpmath.re(x.approx(50) - y.approx(50))
            expected = 0 if abs(approx) < mpmath.mpf("1e-40") else (1 if approx > 0 else -1)
        ok &= sign_real(r) == expected
        failures += not ok
    elapsed = time.perf_counter() - t0
    verdict(10, failures == 0 and elapsed < 30, f"100 cases, {failures} failures, {elapsed:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
