import mpmath
import pytest

from semitor.elliptic import (IsogenyWitness, ModularMatrix, PeriodRatio, cm_discriminant,
                              in_fundamental_domain, isogenous, isomorphic, period_ratio, reduce_fundamental)
from semitor.errors import FieldMismatch, RealRatio
from semitor.exact import NumberField, mpq

from conftest import P, R, imag_quadratic_field, random_element


def random_modular(rng, steps=6):
    M = ModularMatrix.identity()
    T, S = ModularMatrix(1, 1, 0, 1), ModularMatrix(0, -1, 1, 0)
    for _ in range(steps):
        k = rng.randint(-3, 3)
        M = ModularMatrix(1, k, 0, 1) @ M
        if rng.random() < 0.7:
            M = S @ M
    return M


def random_tau(K, rng):
    while True:
        x = random_element(K, rng, 6, 4)
        s = K.conjugate_context.sign_im(x)
        if s:
            return PeriodRatio(x if s > 0 else -x)


def test_period_ratio_examples(Ki):
    i = Ki.gen
    assert period_ratio(Ki.one, i).tau == i
    assert period_ratio(Ki.one, -2 * i).tau == 2 * i
    assert period_ratio(Ki.rational(2), 1 + i).tau == (1 + i) / 2
    with pytest.raises(RealRatio):
        period_ratio(Ki.one, Ki.rational(3))
    with pytest.raises(RealRatio):
        PeriodRatio.of(-i)


def test_reduce_examples(Ki):
    i = Ki.gen
    r, M = reduce_fundamental(PeriodRatio.of(5 + 2 * i))
    assert r.tau == 2 * i and M == ModularMatrix(1, -5, 0, 1)
    r, M = reduce_fundamental(PeriodRatio.of(i / 2))
    assert r.tau == 2 * i and M.act(i / 2) == 2 * i
    r, _ = reduce_fundamental(PeriodRatio.of((1 + i) / 2))
    assert r.tau == i


def test_boundary_convention(Ki):
    i = Ki.gen
    K3 = imag_quadratic_field(3)
    rho = (1 + K3.gen) / 2                       # e^{i pi / 3}
    assert in_fundamental_domain(rho)
    assert not in_fundamental_domain(rho - 1)    # Re = -1/2 excluded
    assert reduce_fundamental(PeriodRatio.of(rho - 1))[0].tau == rho
    # on the unit circle the left half is folded onto the right half
    right, left = (7 + 24 * i) / 25, (-7 + 24 * i) / 25
    assert in_fundamental_domain(right) and not in_fundamental_domain(left)
    assert reduce_fundamental(PeriodRatio.of(left))[0].tau == right
    assert in_fundamental_domain(i) and not in_fundamental_domain(i / 2)


def test_reduce_properties(Ki, Kc, Kz, rng):
    for K in (Ki, Kc, Kz):
        for _ in range(15):
            tau = random_tau(K, rng)
            r, M = reduce_fundamental(tau)
            assert in_fundamental_domain(r.tau) and M.act(tau.tau) == r.tau
            r2, M2 = reduce_fundamental(r)
            assert r2.tau == r.tau and M2 == ModularMatrix.identity()
            N = random_modular(rng)
            moved = PeriodRatio.of(N.act(tau.tau))
            assert reduce_fundamental(moved)[0].tau == r.tau
            iso = isomorphic(tau, moved)
            assert iso is not None and iso.act(tau.tau) == moved.tau


def test_reduction_agrees_with_j_invariant(Ki, Kz, rng):
    for K in (Ki, Kz):
        for _ in range(10):
            tau = random_tau(K, rng)
            r, _ = reduce_fundamental(tau)
            with mpmath.workdps(30):
                a, b = tau.tau.approx(30), r.tau.approx(30)
                if mpmath.im(a) > 0.05:
                    assert abs(mpmath.kleinj(a) - mpmath.kleinj(b)) < 1e-10 * (1 + abs(mpmath.kleinj(b)))


def test_isomorphic_examples(Ki):
    i = Ki.gen
    assert isomorphic(PeriodRatio.of(2 * i), PeriodRatio.of(3 * i)) is None
    M = isomorphic(PeriodRatio.of(i), PeriodRatio.of((1 + i) / 2))
    assert M is not None and M.act(i) == (1 + i) / 2
    M = isomorphic(PeriodRatio.of(2 * i), PeriodRatio.of(2 * i + 1))
    assert M.act(2 * i) == 2 * i + 1


def test_isogenous_examples(Ki, Kc, Kz):
    i = Ki.gen
    w = isogenous(PeriodRatio.of(i), PeriodRatio.of(2 * i))
    assert w.as_tuple() == (2, 0, 0, 1)
    t = Kc.gen
    w = isogenous(PeriodRatio.of(t), PeriodRatio.of(-t * t))
    a, b, c, d = w.as_tuple()
    assert a == 0 and d == 0 and b == -2 * c
    z = Kz.gen
    assert isogenous(PeriodRatio.of(z * z), PeriodRatio.of(z + z ** 3)) is None


def test_isogeny_is_equivalence(Kc, rng):
    t = Kc.gen
    base = PeriodRatio.of(t)
    taus = []
    while len(taus) < 6:
        A = IsogenyWitness(*(mpq(rng.randint(-4, 4)) for _ in range(4)))
        if A.det == 0:
            continue
        y = A.act(t)
        s = Kc.conjugate_context.sign_im(y)
        taus.append(PeriodRatio(y if s > 0 else -y))
    for x in taus:
        assert isogenous(x, x) is not None
        for y in taus:
            w = isogenous(x, y)
            assert w is not None and w.verifies(x.tau, y.tau)
            assert w.inverse().verifies(y.tau, x.tau)
            for z in taus[:2]:
                w2 = isogenous(y, z)
                assert (w2 @ w).verifies(x.tau, z.tau)
    assert isogenous(base, taus[0]) is not None


def test_isogenous_random_rational_images(Ki, Kz, rng):
    for K in (Ki, Kz):
        for _ in range(20):
            tau = random_tau(K, rng)
            while True:
                A = IsogenyWitness(*(mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)))
                if A.det > 0:
                    break
            image = PeriodRatio.of(A.act(tau.tau))
            w = isogenous(tau, image)
            assert w is not None and w.verifies(tau.tau, image.tau)


def test_isomorphic_implies_isogenous(Kz, rng):
    for _ in range(10):
        tau = random_tau(Kz, rng)
        moved = PeriodRatio.of(random_modular(rng).act(tau.tau))
        assert isomorphic(tau, moved) is not None and isogenous(tau, moved) is not None


def test_cm_discriminant(Ki, Kc):
    assert cm_discriminant(PeriodRatio.of(Ki.gen)) == -4
    K3 = imag_quadratic_field(3)
    assert cm_discriminant(PeriodRatio.of((1 + K3.gen) / 2)) == -3
    assert cm_discriminant(PeriodRatio.of(Kc.gen)) is None


def test_field_mismatch(Ki, Kz):
    with pytest.raises(FieldMismatch):
        isogenous(PeriodRatio.of(Ki.gen), PeriodRatio.of(Kz.gen))


def test_strip_isomorphism_criterion(Ki, Kz, rng):
    """For Im > 1: isomorphic exactly when the difference is an integer."""
    for K in (Ki, Kz):
        for _ in range(10):
            tau = random_tau(K, rng)
            ctx = K.conjugate_context
            while ctx.sign_real(ctx.im(tau.tau) - 1) <= 0:
                tau = PeriodRatio(tau.tau * 2)
            k = rng.randint(-3, 3)
            same = PeriodRatio(tau.tau + k)
            assert isomorphic(tau, same) is not None
            other = PeriodRatio(tau.tau + mpq(1, 3))
            assert isomorphic(tau, other) is None
