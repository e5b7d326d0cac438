from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from frobrep.exactla import GF, Matrix, rank
from frobrep.frobcore import (FrobeniusCore, NotFree, NotFrobenius, UnsupportedCore, check_frobenius,
                              exterior_core, free_basis, free_module, free_rank, free_rank_any, is_module_map,
                              module_hom, modules_isomorphic, product_core, regular_module, trivial_module,
                              truncated_poly)
from frobrep.repcat import random_module


def jordan_module(A, a):
    """``k[e]/(e^a)`` as a module over ``A = k[e]/(e^c)``, ``a <= c``."""
    J = Matrix([[1 if r == s + 1 else 0 for s in range(a)] for r in range(a)], a)
    return type(regular_module(A))(A, a, (J,))


def radical_square_zero():
    """``k[x, y]/(x, y)^2``: local, but its socle is 2-dimensional, so not Frobenius."""
    mult = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    mult[0][0][0] = 1
    for u in (1, 2):
        mult[0][u][u] = mult[u][0][u] = 1
    return FrobeniusCore("k[x,y]/(x,y)^2", 3, mult, [1, 0, 0], [[0, 1, 0], [0, 0, 1]])


@pytest.mark.parametrize("c", [1, 2, 3, 4])
def test_truncated_poly(c):
    A = truncated_poly(c)
    A.check_algebra()
    assert A.is_local()
    assert rank(A.gram()) == c
    assert check_frobenius(A)["ok"]
    assert A.socle.ncols == 1


def test_truncated_poly_over_prime_field():
    A = truncated_poly(3, GF(3))
    assert A.is_local() and rank(A.gram()) == 3


def test_exterior_core():
    E = exterior_core()
    E.check_algebra()
    assert E.is_local() and not E.is_single_generator()
    assert E.frobenius_form == (0, 0, 0, 1)
    with pytest.raises(UnsupportedCore, match="unsupported core"):
        free_rank(E, regular_module(E))
    assert free_rank_any(free_module(E, 2)) == 2
    assert isinstance(free_rank_any(trivial_module(E)), NotFree)


def test_product_core_is_not_local():
    P = product_core()
    assert not P.is_local()
    assert check_frobenius(P)["ok"]


def test_not_frobenius_certificate():
    R = radical_square_zero()
    R.check_algebra()
    assert R.is_local()
    with pytest.raises(NotFrobenius) as e:
        check_frobenius(R)
    assert e.value.certificate["rank_defect"] == 1


def test_opposite_of_commutative_core_has_same_table():
    A = truncated_poly(3)
    assert A.opposite.same_as(A)


def test_json_roundtrip():
    E = exterior_core()
    E2 = FrobeniusCore.from_json(E.to_json())
    assert E2.same_as(E)
    assert FrobeniusCore.from_json({"truncated_poly": 2}) is truncated_poly(2)


@pytest.mark.parametrize("a,b", [(1, 1), (1, 3), (2, 3), (3, 2), (3, 3)])
def test_hom_between_cyclic_modules(a, b):
    A = truncated_poly(3)
    M, N = jordan_module(A, a), jordan_module(A, b)
    basis = module_hom(A, M, N)
    assert len(basis) == min(a, b)
    assert all(is_module_map(f, M, N) for f in basis)


def test_free_rank_profile():
    A = truncated_poly(3)
    assert free_rank(A, free_module(A, 2)) == 2
    w = free_rank(A, jordan_module(A, 2))
    assert isinstance(w, NotFree) and w.profile == (2,)


@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_random_module_freeness_two_ways(seed, c):
    A = truncated_poly(c)
    M = random_module(A, random.Random(seed))
    a = free_rank(A, M)
    b = free_basis(M)
    if isinstance(a, NotFree):
        assert b is None
    else:
        assert b is not None and b.ncols == a


@given(st.integers(0, 10**6))
def test_hom_dimension_of_free_source(seed):
    # Hom(A^r, M) = M^r
    A = truncated_poly(2)
    M = random_module(A, random.Random(seed))
    assert len(module_hom(A, free_module(A, 2), M)) == 2 * M.dim


@given(st.integers(0, 10**6))
def test_isomorphism_test_is_reflexive(seed):
    A = truncated_poly(3)
    M = random_module(A, random.Random(seed))
    assert modules_isomorphic(M, M)
    assert not modules_isomorphic(M, M.direct_sum(trivial_module(A)))
