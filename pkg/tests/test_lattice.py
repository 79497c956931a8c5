import mpmath
import pytest

from semitor.errors import (DegenerateSpan, DegenerateV, InHyperplane, InvalidInput, NotDiscreteOrRankDeficient,
                            NotPrimitive)
from semitor.exact import mpq, q_dependence
from semitor.exact.integer import det
from semitor.lattice import (QPlane, canonical_triples, e_plane, e_plane_from_images, enumerate_quotients,
                             membership_H, membership_H_numeric, normalize, normalize_with,
                             normalized_from_alpha_beta, psi_preimage, quotient_along, quotient_curve,
                             validate)

from conftest import random_element, scramble


def numeric_real_rank(lattice, dps=50):
    with mpmath.workdps(dps):
        rows = []
        for g in lattice.generators:
            z1, z2 = (x.approx(dps) for x in g)
            rows.append([mpmath.re(z1), mpmath.im(z1), mpmath.re(z2), mpmath.im(z2)])
        sv = mpmath.svd_r(mpmath.matrix(rows), compute_uv=False)
        return sum(1 for s in sv if s > mpmath.mpf("1e-40"))


# --- validate ----------------------------------------------------------------

def test_validate_examples(Ki, Kc, split_fixture, cubic_fixture):
    assert split_fixture.field == Ki and cubic_fixture.field == Kc
    with pytest.raises(NotDiscreteOrRankDeficient):
        validate(Ki, [(1, 0), (0, 1), (mpq(1, 2), 0)])


def test_validate_rejects_bad_shapes(Ki):
    with pytest.raises(InvalidInput):
        validate(Ki, [(1, 0), (0, 1)])
    with pytest.raises(InvalidInput):
        validate(Ki, [(1, 0), (0, 1), (1,)])
    # three vectors on one complex line have real rank at most 2
    with pytest.raises(NotDiscreteOrRankDeficient):
        validate(Ki, [(1, 0), (Ki.gen, 0), (1 + Ki.gen, 0)])


def test_validate_matches_numeric_rank(Ki, Kc, rng):
    for _ in range(100):
        K = rng.choice([Ki, Kc])
        gens = [tuple(random_element(K, rng, 2, 1) if rng.random() < 0.7 else K.zero
                      for _ in range(2)) for _ in range(3)]
        if rng.random() < 0.3:
            q = mpq(rng.randint(-3, 3), rng.randint(1, 3))
            gens[2] = (gens[0][0] * q + gens[1][0], gens[0][1] * q + gens[1][1])
        from semitor.lattice import SemiTorusLattice
        expected = numeric_real_rank(SemiTorusLattice(K, tuple(gens))) == 3
        try:
            validate(K, gens)
            ok = True
        except NotDiscreteOrRankDeficient:
            ok = False
        except DegenerateSpan:
            ok = True
        assert ok == expected


# --- normalize -----------------------------------------------------------------

def test_normalize_postconditions(split_fixture, cubic_fixture, generic_fixture):
    for L in (split_fixture, cubic_fixture, generic_fixture):
        nl = normalize(L)
        nl.check()
        ctx = nl.field.conjugate_context
        assert not ctx.is_real(nl.alpha) and not ctx.is_real(nl.beta)
        assert abs(det(nl.recombination)) == 1


def test_normalize_identity_when_already_normal(cubic_fixture, generic_fixture, Kc, Kz):
    t, z = Kc.gen, Kz.gen
    nl = normalize(cubic_fixture)
    assert nl.recombination == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert (nl.alpha, nl.beta) == (t, t * t)
    nl = normalize(generic_fixture)
    assert nl.recombination == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert (nl.alpha, nl.beta) == (z * z, z + z ** 3)


def test_normalize_split_fixture_given_basis(split_fixture, Ki):
    """gamma1 = (1,1), gamma2 = (1,i), third (1,0) gives ((1-i)/2, (1+i)/2)."""
    i = Ki.gen
    nl = normalize_with(split_fixture, ((1, 1, 0), (1, 0, 1), (1, 0, 0)))
    nl.check()
    assert (nl.alpha, nl.beta) == ((1 - i) / 2, (1 + i) / 2)


def test_normalize_scrambled_recovers_lattice(cubic_fixture, rng):
    for _ in range(10):
        L, _ = scramble(cubic_fixture, rng)
        nl = normalize(L)
        nl.check()


# --- relation space ---------------------------------------------------------------

def test_relation_space_examples(Ki, Kc, Kz):
    i = Ki.gen
    nl = normalized_from_alpha_beta((1 - i) / 2, (1 + i) / 2)
    I = nl.relations
    assert I.dim == 2
    for t in ((1, -1, 0), (0, 1, -1), (2, 3, -5)):
        assert I.contains(t)
    assert not I.contains((1, 0, 0))
    z = Kz.gen
    I = normalized_from_alpha_beta(z * z, z + z ** 3).relations
    assert I.dim == 1 and I.contains((0, 0, 1)) and not I.contains((1, 0, 0))
    t = Kc.gen
    assert normalized_from_alpha_beta(t, t * t).relations.dim == 0


def test_relation_dim_two_iff_dependent(split_fixture, cubic_fixture, generic_fixture, rng):
    lattices = [split_fixture, cubic_fixture, generic_fixture]
    lattices += [scramble(rng.choice(lattices[:3]), rng)[0] for _ in range(50)]
    for L in lattices:
        nl = normalize(L)
        dependent = bool(q_dependence([nl.field.one, nl.alpha, nl.beta]))
        assert (nl.relations.dim == 2) == dependent


def test_membership_examples(split_fixture, cubic_fixture, Kz):
    z = Kz.gen
    assert membership_H(normalize(split_fixture), (1, 1, 0)) == normalize(split_fixture).relations.contains((1, 1, 0))
    i_nl = normalized_from_alpha_beta(*(lambda i: ((1 - i) / 2, (1 + i) / 2))(split_fixture.field.gen))
    assert membership_H(i_nl, (1, -1, 0))
    assert membership_H(normalized_from_alpha_beta(z * z, z + z ** 3), (0, 0, 1))
    assert not membership_H(normalize(cubic_fixture), (0, 1, 0))


# --- quotients ------------------------------------------------------------------

def test_quotient_counts(split_fixture, cubic_fixture, generic_fixture):
    assert len(list(canonical_triples(1))) == 13
    assert len(enumerate_quotients(normalize(cubic_fixture), 1)) == 13
    assert len(enumerate_quotients(normalize(generic_fixture), 1)) == 12
    split = enumerate_quotients(normalize(split_fixture), 1)
    assert len(split) < 13
    i_nl = normalized_from_alpha_beta(*(lambda i: ((1 - i) / 2, (1 + i) / 2))(split_fixture.field.gen))
    triples = {q.triple for q in enumerate_quotients(i_nl, 1)}
    assert (1, -1, 0) not in triples and (0, 1, -1) not in triples


def test_quotient_functional_and_basis(cubic_fixture, generic_fixture):
    for L in (cubic_fixture, generic_fixture):
        nl = normalize(L)
        for q in enumerate_quotients(nl, 2):
            m, n, p = q.triple
            assert q.functional == (nl.beta * p + m, -(nl.alpha * p + n))
            assert q.verify()


def test_quotient_examples(Ki, Kc, Kz, split_fixture):
    i = Ki.gen
    for m in range(1, 6):
        # quotient of Z x Z[i] by the map m z2 - z1: lattice <1, m i>
        q = quotient_along(Ki, split_fixture.generators, (m, 1, 0))
        assert q.tau.tau == i * m
    t, z = Kc.gen, Kz.gen
    cub = normalized_from_alpha_beta(t, t * t)
    # (0,1,0) is gamma = e1: functional -z2, images 0, -1, -theta^2
    assert quotient_curve(cub, (1, 0, 0)).tau.tau == t
    assert quotient_curve(cub, (0, 1, 0)).tau.tau == -t * t
    gen = normalized_from_alpha_beta(z * z, z + z ** 3)
    assert quotient_curve(gen, (0, 1, 0)).tau.tau == z + z ** 3
    assert quotient_curve(gen, (1, 0, 0)).tau.tau == z * z


def test_quotient_errors(generic_fixture):
    nl = normalize(generic_fixture)
    with pytest.raises(InHyperplane):
        quotient_curve(nl, (0, 0, 1))
    with pytest.raises(NotPrimitive):
        quotient_curve(nl, (2, 0, 2))
    with pytest.raises(InvalidInput):
        quotient_curve(nl, (0, 0, 0))


def test_enumeration_parallel_matches_serial(cubic_fixture):
    nl = normalize(cubic_fixture)
    a = enumerate_quotients(nl, 2)
    b = enumerate_quotients(nl, 2, jobs=2)
    assert [(q.triple, q.tau.tau) for q in a] == [(q.triple, q.tau.tau) for q in b]


# --- planes ---------------------------------------------------------------------

def test_e_plane_examples(cubic_fixture):
    nl = normalize(cubic_fixture)
    assert e_plane(nl, (1, 0, 0)) == QPlane.span([(1, 0, 0), (0, 1, 0)])
    assert e_plane(nl, (0, 0, 1)) == QPlane.span([(0, 0, 1), (0, 1, 0)])
    E = e_plane(nl, (1, 1, 1))
    assert E == QPlane.span([(1, 0, 1), (1, 1, 0)]) and E.contains((0, 1, -1))


def test_psi_examples(cubic_fixture):
    nl = normalize(cubic_fixture)
    assert psi_preimage(nl, QPlane.span([(1, 0, 0), (0, 1, 0)])) == (1, 0, 0)
    assert psi_preimage(nl, QPlane.span([(0, 1, 0), (0, 0, 1)])) == (0, 0, 1)
    assert psi_preimage(nl, QPlane.span([(1, 1, 0), (1, 0, 1)])) == (1, 1, 1)


def test_e_plane_needs_three_dimensional_V(split_fixture):
    with pytest.raises(DegenerateV):
        e_plane(normalize(split_fixture), (1, 0, 0))


def test_e_plane_equals_image_span(generic_fixture, rng):
    nl = normalize(generic_fixture)
    for _ in range(30):
        t = tuple(rng.randint(-4, 4) for _ in range(3))
        if not any(t):
            continue
        assert e_plane(nl, t) == e_plane_from_images(nl, t)


def test_membership_oracle_small(split_fixture, rng):
    nl = normalize(split_fixture)
    for _ in range(20):
        t = tuple(mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3))
        assert membership_H(nl, t) == membership_H_numeric(nl, t)
