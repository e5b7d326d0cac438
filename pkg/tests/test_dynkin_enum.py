from __future__ import annotations

import pytest

from conftest import DYNKIN_GLS, family, gls
from frobrep.cartan import named
from frobrep.dynkin_enum import (enumerate_modules, module_for_root, non_dynkin_witness, orbit_law_failures,
                                 verify_bijection)
from frobrep.functors import reflect_plus, tau_minus
from frobrep.homology import ext1_dim
from frobrep.repcat import is_isomorphic, projective, simple_top, summand_split
from frobrep.weyl import NotDynkin, NotPositiveRoot, positive_part, real_roots_orbit_bfs

DYNKIN = [(f"{n}x{s}" if s > 1 else n, gls(n, s)) for n, s in DYNKIN_GLS]
DIDS = [n for n, _ in DYNKIN]

# [DERIVED] positive root counts of the finite root systems
ROOT_COUNTS = {"A2": 3, "A2x2": 3, "B2": 4, "G2": 6, "A3": 6, "B3": 9}


@pytest.mark.parametrize("name,alg", DYNKIN, ids=DIDS)
def test_bijection(name, alg):
    r = verify_bijection(alg)
    assert r.ok, r.failures
    assert r.count == r.expected == ROOT_COUNTS[name]


@pytest.mark.parametrize("name,alg", DYNKIN, ids=DIDS)
def test_module_dimension_is_weighted_rank(name, alg):
    _, D = alg.cartan()
    for e in enumerate_modules(alg).entries:
        assert e.module.is_locally_free()
        assert e.module.rank_vector() == e.root
        assert sum(e.module.dims()) == sum(x * d for x, d in zip(e.root, D))


def test_frozen_g2_table():
    # [DERIVED] witnesses (t, i) and vertex dimensions over the G2 algebra with c = (3, 1)
    t = enumerate_modules(gls("G2"))
    got = {e.root: (e.witness, tuple(e.module.dims())) for e in t.entries}
    assert got == {(0, 1): ((2, 1), (0, 1)), (1, 0): ((0, 0), (3, 0)), (1, 1): ((0, 1), (3, 1)),
                   (1, 2): ((1, 1), (3, 2)), (1, 3): ((2, 0), (3, 3)), (2, 3): ((1, 0), (6, 3))}


@pytest.mark.parametrize("name,alg", DYNKIN[:4], ids=DIDS[:4])
def test_root_modules_are_indecomposable_and_rigid(name, alg):
    for e in enumerate_modules(alg).entries:
        assert len(summand_split(e.module)) == 1
        assert ext1_dim(e.module, e.module) == 0


@pytest.mark.parametrize("name,alg", DYNKIN, ids=DIDS)
def test_simple_root_at_sink_is_killed(name, alg):
    e1 = module_for_root(alg, (1,) + (0,) * (alg.n - 1)).module
    assert is_isomorphic(e1, simple_top(alg, 0))
    assert reflect_plus(e1).rep.is_zero()


@pytest.mark.parametrize("name,alg", DYNKIN, ids=DIDS)
def test_orbit_law_holds(name, alg):
    C, _ = alg.cartan()
    roots = set(positive_part(real_roots_orbit_bfs(C)))
    for e in enumerate_modules(alg, check_iso=False).entries:
        assert orbit_law_failures(alg, e.module, roots) == []


def test_non_root_is_rejected():
    with pytest.raises(NotPositiveRoot):
        module_for_root(gls("A2"), (2, 1))
    with pytest.raises(NotPositiveRoot):
        module_for_root(gls("B2"), (2, 1))


def test_non_dynkin_refuses_enumeration():
    with pytest.raises(NotDynkin):
        enumerate_modules(gls("Kronecker"))
    with pytest.raises(ValueError):
        non_dynkin_witness(gls("A2"), 3)


def test_kronecker_preprojectives():
    ws = non_dynkin_witness(gls("Kronecker"), 10)
    ranks = [w.root for w in ws]
    assert len(set(ranks)) == 10
    # [DERIVED] Kronecker preprojectives have ranks of consecutive integers
    assert all(abs(a - b) == 1 for a, b in ranks)
    for w in ws:
        assert w.module.is_locally_free()
        assert w.module.rank_vector() == w.root
        assert ext1_dim(w.module, w.module) == 0
        assert len(summand_split(w.module)) == 1


def test_preprojective_chain_is_tau_minus():
    alg = gls("Kronecker")
    ws = {(w.vertex, w.r): w.module for w in non_dynkin_witness(alg, 6)}
    for (v, r), M in ws.items():
        if r == 1:
            assert is_isomorphic(M, tau_minus(projective(alg, v)))


def test_path_algebra_over_core_bijection():
    for key in ("A2_dual_numbers", "A3_dual_numbers", "genpath_21", "A2_exterior"):
        assert verify_bijection(family(key)).ok, key


def test_table_json_shape():
    t = enumerate_modules(gls("B2"))
    js = t.to_json()
    assert [e["module_ref"] for e in js] == ["M0", "M1", "M2", "M3"]
    assert {tuple(e["root"]) for e in js} == set(t.roots())
    assert t.field == "QQ"
    assert named("B2").name == "B2"
