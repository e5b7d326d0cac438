from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import all_test_algebras, family, gls
from frobrep.exactla import Matrix
from frobrep.repcat import (RepError, RepMorphism, cokernel_rep, direct_sum, direct_sum_all, dual_rep,
                            hom_dim, hom_space, identity_morphism, injective, is_isomorphic, is_projective,
                            kernel_rep, projective, projective_cover_map, random_locally_free,
                            random_rep_any, simple_top, summand_split, twist, zero_rep)
from frobrep.weyl import beta_gamma

ALGS = all_test_algebras()
IDS = [n for n, _ in ALGS]


@pytest.mark.parametrize("name,alg", ALGS, ids=IDS)
def test_projective_and_injective_ranks(name, alg):
    C, _ = alg.cartan()
    betas, gammas = beta_gamma(C)
    for i in range(alg.n):
        P, I = projective(alg, i), injective(alg, i)
        P.validate()
        I.validate()
        assert P.rank_vector() == betas[i]
        assert I.rank_vector() == gammas[i]
        assert is_projective(P)


@pytest.mark.parametrize("name,alg", ALGS, ids=IDS)
def test_hom_from_projective_and_into_injective(name, alg):
    rng = random.Random(name)
    for t in range(6):
        X = random_locally_free(alg, rng) if t % 2 else random_rep_any(alg, rng)
        for i in range(alg.n):
            assert hom_dim(projective(alg, i), X) == X.modules[i].dim
            assert hom_dim(X, injective(alg, i)) == X.modules[i].dim


def test_a2_structure():
    alg = gls("A2")
    P1, P2 = projective(alg, 0), projective(alg, 1)
    assert P1.dims() == (1, 0) and P2.dims() == (1, 1)
    assert is_isomorphic(P1, simple_top(alg, 0))
    assert is_isomorphic(injective(alg, 0), P2)
    assert not is_projective(simple_top(alg, 1))
    assert hom_dim(P1, P2) == 1 and hom_dim(P2, P1) == 0


def test_summand_split_recovers_projectives():
    alg = gls("B2")
    X = direct_sum_all([projective(alg, 0), projective(alg, 1), simple_top(alg, 1)], alg)
    parts = summand_split(X, seed=3)
    assert sorted(p.dims() for p in parts) == sorted([(2, 0), (2, 1), (0, 1)])


def test_zero_and_validation():
    alg = gls("A2")
    Z = zero_rep(alg)
    assert Z.is_zero() and Z.is_locally_free() and Z.rank_vector() == (0, 0)
    X = simple_top(alg, 0)
    with pytest.raises(RepError):
        type(X)(alg, X.modules[:1], {})


def test_not_locally_free_report():
    alg = family("A2_dual_numbers")
    from frobrep.frobcore import trivial_module, zero_module
    X = type(simple_top(alg, 0))(alg, [trivial_module(alg.cores[0]), zero_module(alg.cores[1])], {})
    rep = X.locally_free_report()
    assert not rep.ok and rep.position == 0


@given(st.sampled_from(IDS), st.integers(0, 10**6))
def test_kernel_cokernel_dimensions(name, seed):
    alg = dict(ALGS)[name]
    rng = random.Random(seed)
    X, Y = random_rep_any(alg, rng), random_locally_free(alg, rng)
    hs = hom_space(X, Y)
    if not hs:
        return
    from frobrep.repcat import random_combination
    f = random_combination(hs, X, Y, rng)
    assert f.is_morphism()
    K, _ = kernel_rep(f)
    Q, _, _ = cokernel_rep(f)
    K.validate()
    Q.validate()
    for v in range(alg.n):
        assert K.dims()[v] + Y.dims()[v] == X.dims()[v] + Q.dims()[v]


@given(st.sampled_from(IDS), st.integers(0, 10**6))
def test_projective_cover_is_onto_from_projective(name, seed):
    alg = dict(ALGS)[name]
    X = random_rep_any(alg, random.Random(seed))
    P, eps = projective_cover_map(X)
    assert is_projective(P)
    assert eps.is_morphism()
    Q, _, _ = cokernel_rep(eps)
    assert Q.is_zero()


@given(st.sampled_from(IDS), st.integers(0, 10**6))
def test_dual_rep_exchanges_hom(name, seed):
    alg = dict(ALGS)[name]
    rng = random.Random(seed)
    X, Y = random_rep_any(alg, rng), random_rep_any(alg, rng)
    DX, DY = dual_rep(X), dual_rep(Y)
    DX.validate()
    assert hom_dim(X, Y) == hom_dim(DY, DX)


@given(st.sampled_from(IDS), st.integers(0, 10**6))
def test_direct_sum_is_additive(name, seed):
    alg = dict(ALGS)[name]
    rng = random.Random(seed)
    X, Y, Z = (random_rep_any(alg, rng) for _ in range(3))
    S = direct_sum(X, Y)
    S.validate()
    assert hom_dim(S, Z) == hom_dim(X, Z) + hom_dim(Y, Z)
    assert hom_dim(Z, twist(twist(S))) == hom_dim(Z, S)


def test_identity_and_compose():
    alg = gls("G2")
    X = projective(alg, 1)
    idX = identity_morphism(X)
    assert idX.is_iso() and idX.compose(idX).parts == idX.parts
    bad = RepMorphism(X, X, tuple(Matrix.zeros(M.dim, M.dim) for M in X.modules))
    assert bad.is_morphism() and not bad.is_iso()
