from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from frobrep.cartan import NAMED, named, quadratic_form
from frobrep.weyl import (NotDynkin, NotPositiveRoot, apply_word, beta_gamma, coxeter, coxeter_minus,
                          coxeter_order, coxeter_plus, descent_witness, infinite_family, positive_part,
                          positive_roots_coxeter, positive_roots_gamma, real_roots_orbit_bfs, replay_witness,
                          simple_reflection)

# |positive roots| and Coxeter numbers; |roots+| = n h / 2 ties the two together
COUNTS = {"A2": (3, 3), "A3": (6, 4), "A4": (10, 5), "B2": (4, 4), "B3": (9, 6),
          "G2": (6, 6), "D4": (12, 6), "F4": (24, 12), "C3": (9, 6)}
DYNKIN = list(COUNTS)


@pytest.mark.parametrize("name", DYNKIN)
def test_counts_and_three_enumerations(name):
    C, D = NAMED[name]
    count, h = COUNTS[name]
    cox = {t.root for t in positive_roots_coxeter(C, D)}
    bfs = positive_part(real_roots_orbit_bfs(C))
    assert cox == bfs == positive_roots_gamma(C, D)
    assert len(cox) == count == len(C) * h // 2
    assert coxeter_order(C, D) == h


def test_b2_and_g2_roots_by_hand():
    assert {t.root for t in positive_roots_coxeter(*NAMED["B2"])} == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert {t.root for t in positive_roots_coxeter(*NAMED["G2"])} == {
        (1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}


def test_beta_gamma_a3():
    betas, gammas = beta_gamma(NAMED["A3"][0])
    assert betas == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert gammas == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]


@pytest.mark.parametrize("name", DYNKIN)
def test_descent_witness_replays(name):
    C, D = NAMED[name]
    for t in positive_roots_coxeter(C, D):
        w = descent_witness(C, D, t.root)
        assert replay_witness(C, w) == t.root


def test_descent_errors():
    C, D = NAMED["A2"]
    with pytest.raises(NotPositiveRoot):
        descent_witness(C, D, (2, 1))
    with pytest.raises(NotPositiveRoot):
        descent_witness(C, D, (-1, 0))
    with pytest.raises(NotDynkin):
        descent_witness(*NAMED["Kronecker"], (1, 0))


def test_kronecker_family():
    C, D = NAMED["Kronecker"]
    fam = infinite_family(C, D, 6)
    assert [t.root for t in fam] == [(1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (6, 5)]
    assert infinite_family(C, D, 0) == []
    with pytest.raises(ValueError, match="is Dynkin"):
        infinite_family(*NAMED["A2"], 3)


vectors = st.lists(st.integers(-5, 5), min_size=4, max_size=4).map(tuple)


@given(st.sampled_from(["A4", "B3", "D4", "F4", "C3"]), vectors, st.integers(0, 3))
def test_reflection_is_involution_and_isometry(name, x, i):
    C, D = NAMED[name]
    n = len(C)
    x = x[:n]
    i = i % n
    y = simple_reflection(C, i, x)
    assert simple_reflection(C, i, y) == x
    assert quadratic_form(C, D, y) == quadratic_form(C, D, x)


@given(st.sampled_from(DYNKIN), vectors, st.integers(-4, 4))
def test_coxeter_powers(name, x, k):
    C, _ = NAMED[name]
    x = x[:len(C)]
    assert coxeter_minus(C, coxeter_plus(C, x)) == x
    assert coxeter(C, -k, coxeter(C, k, x)) == x


@given(st.sampled_from(DYNKIN), st.lists(st.integers(0, 3), max_size=8))
def test_orbit_of_simple_roots_stays_in_root_set(name, word):
    C, D = NAMED[name]
    n = len(C)
    roots = real_roots_orbit_bfs(C)
    for i in range(n):
        x = tuple(1 if j == i else 0 for j in range(n))
        assert apply_word(C, [w % n for w in word], x) in roots


def test_symmetrizer_scaling_keeps_roots():
    a = named("A2")
    b = named("A2", 2)
    assert ({t.root for t in positive_roots_coxeter(a.C, a.D)}
            == {t.root for t in positive_roots_coxeter(b.C, b.D)})
