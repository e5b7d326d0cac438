from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import all_test_algebras
from frobrep.bimod import (NotLinear, adjunction_inverse, adjunction_transport, arrow_bimodule,
                           bimodule_isomorphism, dual_basis, dual_basis_failures, dual_bimodule,
                           free_core_bimodule, gls_bimodule, tensor, tensor_map)
from frobrep.cartan import CartanError
from frobrep.exactla import Matrix
from frobrep.frobcore import exterior_core, free_module, is_module_map, truncated_poly
from frobrep.repcat import random_module, random_module_map


def every_bimodule():
    seen = []
    for name, alg in all_test_algebras():
        for k in range(alg.n):
            G = alg.rotation(k)
            for key, B in sorted(G.bimods.items()):
                seen.append((f"{name}/rot{k}/{key}", B))
        for key, B in sorted(alg.opposite.bimods.items()):
            seen.append((f"{name}/op/{key}", B))
    return seen


@pytest.mark.parametrize("ci,cj,cij,cji", [
    (1, 1, -1, -1), (2, 2, -1, -1), (2, 1, -1, -2), (1, 2, -2, -1), (3, 1, -1, -3),
    (1, 3, -3, -1), (2, 2, -2, -2), (4, 6, -3, -2), (1, 1, -2, -2),
])
def test_gls_bimodule_ranks(ci, cj, cij, cji):
    B = gls_bimodule(ci, cj, cij, cji)
    B.validate()
    assert (B.left_rank, B.right_rank, B.dim) == (-cij, -cji, -ci * cij)
    assert not dual_basis_failures(B)


def test_gls_bimodule_rejects_bad_data():
    with pytest.raises(CartanError):
        gls_bimodule(1, 1, -1, -2)


def test_dual_is_an_involution_on_data():
    B = gls_bimodule(2, 1, -1, -2)
    DB = B.dual
    assert DB.dual is B
    assert dual_bimodule(dual_bimodule(B)).same_data(B)
    assert (DB.left_rank, DB.right_rank) == (B.right_rank, B.left_rank)
    assert DB.left_core is B.right_core


def test_free_and_arrow_bimodules():
    A = truncated_poly(2)
    B = free_core_bimodule(A, 3)
    assert (B.left_rank, B.right_rank, B.dim) == (3, 3, 6)
    E = exterior_core()
    Q = arrow_bimodule(E, A, 2)
    Q.validate()
    assert (Q.left_rank, Q.right_rank, Q.dim) == (4, 8, 16)


def test_gls_dual_matches_opposite_orientation_bimodule():
    # D(B) for the edge (ci, cj) is isomorphic to the bimodule built for (cj, ci)
    B = gls_bimodule(2, 1, -1, -2)
    B2 = gls_bimodule(1, 2, -2, -1)
    assert bimodule_isomorphism(B.dual, B2) is not None


def test_dual_basis_identities_everywhere():
    bad = {name: f for name, B in every_bimodule() if (f := dual_basis_failures(B))}
    assert not bad


def test_dual_basis_shapes():
    B = gls_bimodule(3, 1, -1, -3)
    for side in ("left", "right"):
        xs, fs = dual_basis(B, side)
        assert len(xs) == len(fs) == (B.left_rank if side == "left" else B.right_rank)


EDGE = st.sampled_from([(1, 1, -1, -1), (2, 1, -1, -2), (1, 2, -2, -1), (3, 1, -1, -3), (2, 2, -1, -1)])


@given(EDGE, st.integers(0, 10**6))
def test_adjunction_roundtrip(edge, seed):
    rng = random.Random(seed)
    B = gls_bimodule(*edge)
    Ai, Aj = B.left_core, B.right_core
    Xj, Xi = random_module(Aj, rng), random_module(Ai, rng)
    phi = random_module_map(tensor(B, Xj), Xi, rng)
    psi = adjunction_transport(B, phi, Xj, Xi)
    assert is_module_map(psi, Xj, tensor(B.dual, Xi))
    assert adjunction_inverse(B, psi, Xj, Xi) == phi


@given(EDGE, st.integers(0, 10**6))
def test_adjunction_is_bijective_on_hom_spaces(edge, seed):
    from frobrep.frobcore import module_hom
    rng = random.Random(seed)
    B = gls_bimodule(*edge)
    Xj, Xi = random_module(B.right_core, rng), random_module(B.left_core, rng)
    left = module_hom(B.left_core, tensor(B, Xj), Xi)
    right = module_hom(B.right_core, Xj, tensor(B.dual, Xi))
    assert len(left) == len(right)


@given(EDGE, st.integers(0, 10**6))
def test_tensor_is_functorial(edge, seed):
    rng = random.Random(seed)
    B = gls_bimodule(*edge)
    M, N = random_module(B.right_core, rng), random_module(B.right_core, rng)
    f = random_module_map(M, N, rng)
    assert is_module_map(tensor_map(B, f), tensor(B, M), tensor(B, N))


def test_transport_checks_linearity():
    B = gls_bimodule(2, 2, -1, -1)
    X = free_module(B.right_core, 1)
    Y = free_module(B.left_core, 1)
    phi = Matrix([[1, 0], [0, 0]])  # not a module map
    with pytest.raises(NotLinear, match="not linear"):
        adjunction_transport(B, phi, X, Y)
