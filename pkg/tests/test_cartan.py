from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frobrep.cartan import (DYNKIN, EUCLIDEAN, INDEFINITE, NAMED, CartanDatum, CartanError,
                            cartan_of_quiver, check, classify, dynkin_shape, gls_quantities, gram_minors,
                            named, quadratic_form, quadratic_form_genpath, quadratic_form_pathalg, validate,
                            valued_quiver)


@pytest.mark.parametrize("name,kind,shape", [
    ("A2", DYNKIN, ["A2"]), ("A3", DYNKIN, ["A3"]), ("A4", DYNKIN, ["A4"]),
    ("B2", DYNKIN, ["B2"]), ("B3", DYNKIN, ["B3"]), ("C3", DYNKIN, ["B3"]),
    ("G2", DYNKIN, ["G2"]), ("D4", DYNKIN, ["D4"]), ("F4", DYNKIN, ["F4"]),
    ("Kronecker", EUCLIDEAN, None),
])
def test_named_classification(name, kind, shape):
    d = named(name)
    assert d.classify() == kind
    assert dynkin_shape(d.C) == shape


def test_gram_minors_a2():
    # symmetrized form of A2 is [[2,-1],[-1,2]]
    assert gram_minors(*NAMED["A2"]) == [2, 3]
    assert gram_minors(*NAMED["Kronecker"]) == [2, 0]


@pytest.mark.parametrize("C,D,rule", [
    ([[2, -1], [-1]], [1, 1], "shape"),
    ([[1, -1], [-1, 2]], [1, 1], "diagonal"),
    ([[2, 1], [1, 2]], [1, 1], "sign"),
    ([[2, 0], [-1, 2]], [1, 1], "zero-pattern"),
    ([[2, -1], [-2, 2]], [1, 1], "symmetrizer"),
    ([[2, -1], [-1, 2]], [0, 0], "symmetrizer"),
])
def test_validation_rules(C, D, rule):
    v = validate(C, D)
    assert v is not None and v.rule == rule
    with pytest.raises(CartanError, match="invalid Cartan data"):
        check(C, D)


def test_orientation_rules():
    C, D = NAMED["A3"]
    assert validate(C, D, [(0, 1), (1, 2)]) is None
    assert validate(C, D, [(0, 1)]).rule == "orientation"
    assert validate(C, D, [(0, 1), (1, 0), (1, 2)]).rule == "orientation"


def test_gls_divisibility():
    q = gls_quantities([[2, -1], [-2, 2]], [2, 1], 0, 1)
    assert (q.g, q.f_ij, q.f_ji, q.k) == (1, 1, 2, 1)
    with pytest.raises(CartanError, match="no edge"):
        gls_quantities([[2, 0], [0, 2]], [1, 1], 0, 1)
    # D does not symmetrize C, so f_ij = 2 fails to divide c_j = 1
    with pytest.raises(CartanError, match="must divide"):
        gls_quantities([[2, -2], [-1, 2]], [1, 1], 0, 1)


def test_valued_quiver_b2():
    vq = valued_quiver(*NAMED["B2"])
    (a,) = vq.arrows
    assert a.valuation == (2, 1)


def test_json_roundtrip_named():
    for name in NAMED:
        d = named(name)
        assert CartanDatum.from_json(d.to_json()) == d


def test_pathalg_form_matches_cartan_form():
    arrows = [(1, 0), (2, 1)]
    C, D, _ = cartan_of_quiver(3, arrows)
    for x in [(1, 1, 1), (2, -1, 3), (0, 1, 5)]:
        assert quadratic_form_pathalg(3, arrows, x) == quadratic_form(C, D, x)
    dims = [2, 1, 3]
    C, D, _ = cartan_of_quiver(3, arrows, dims)
    for x in [(1, 1, 1), (2, -1, 3)]:
        assert quadratic_form_genpath(3, arrows, dims, x) == quadratic_form(C, D, x)


@st.composite
def symmetrizable(draw):
    n = draw(st.integers(1, 4))
    D = draw(st.lists(st.sampled_from([1, 2, 3]), min_size=n, max_size=n))
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                # c_i c_ij = c_j c_ji = -m lcm(c_i, c_j)
                from math import lcm
                s = lcm(D[i], D[j]) * draw(st.integers(1, 2))
                C[i][j], C[j][i] = -s // D[i], -s // D[j]
    return C, D


@given(symmetrizable())
def test_classify_matches_eigenvalues(CD):
    C, D = CD
    assert validate(C, D) is None
    G = np.array([[D[i] * C[i][j] for j in range(len(C))] for i in range(len(C))], dtype=float)
    ev = np.linalg.eigvalsh(G)
    kind = classify(C, D)
    if ev.min() > 1e-9:
        assert kind == DYNKIN
    elif ev.min() > -1e-9:
        assert kind == EUCLIDEAN
    else:
        assert kind == INDEFINITE


@given(symmetrizable())
def test_connected_dynkin_has_shape(CD):
    C, D = CD
    from frobrep.cartan import components
    if classify(C, D) == DYNKIN:
        assert dynkin_shape(C) is not None
        assert len(dynkin_shape(C)) == len(components(C))
