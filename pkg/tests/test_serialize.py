from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import all_test_algebras, gls
from frobrep.cartan import named
from frobrep.config import SessionConfig
from frobrep.repcat import is_isomorphic, random_locally_free, random_rep_any
from frobrep.serialize import (SchemaError, algebra_from_json, algebra_to_json, cartan_from_json, cartan_to_json,
                               dumps, load, rep_from_json, rep_to_json, reps_document, reps_from_document,
                               resolve_algebra)

ALGS = all_test_algebras()
IDS = [n for n, _ in ALGS]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4", "Kronecker"])
def test_cartan_round_trip(name):
    doc = cartan_to_json(named(name))
    text = dumps(doc)
    again = dumps(cartan_to_json(cartan_from_json(json.loads(text))))
    assert text == again


@pytest.mark.parametrize("name,alg", ALGS, ids=IDS)
def test_algebra_round_trip_is_fixed_point(name, alg):
    text = dumps(algebra_to_json(alg))
    back = algebra_from_json(json.loads(text))
    assert dumps(algebra_to_json(back)) == text
    assert back.entry_dims() == alg.entry_dims()


@given(st.sampled_from(IDS), st.integers(0, 10**6), st.integers(0, 3))
def test_rep_round_trip(name, seed, shift):
    base = dict(ALGS)[name]
    alg = base.rotation(shift % base.n)
    rng = random.Random(seed)
    X = random_locally_free(alg, rng) if seed % 2 else random_rep_any(alg, rng)
    text = dumps(rep_to_json(X))
    Y = rep_from_json(json.loads(text), base)
    assert Y.algebra is alg
    assert dumps(rep_to_json(Y)) == text
    assert is_isomorphic(X, Y)


def test_reps_document_round_trip():
    alg = gls("B2")
    cfg = SessionConfig(seed=3)
    reps = [random_locally_free(alg, cfg.rng("doc", k)) for k in range(3)]
    doc = json.loads(dumps(reps_document(alg, reps)))
    alg2, back = reps_from_document(doc)
    assert [r.dims() for r in back] == [r.dims() for r in reps]
    assert dumps(reps_document(alg2, back)) == dumps(reps_document(alg, reps))


def test_json_is_one_based():
    alg = gls("A2")
    js = rep_to_json(random_locally_free(alg, random.Random(1)))
    assert js["labels"] == [1, 2]
    assert all("<" in k and "0" not in k.split("<") for k in js.get("maps", {}))


def test_schema_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load(bad)
    with pytest.raises(SchemaError):
        cartan_from_json({"schema_version": 1, "D": [1]})
    with pytest.raises(SchemaError):
        cartan_from_json({"schema_version": 99, "C": [[2]], "D": [1]})
    with pytest.raises(SchemaError):
        algebra_from_json({"schema_version": 1, "spec": {"family": "nope"}})
    with pytest.raises(SchemaError):
        resolve_algebra("NoSuchThing7")


def test_resolve_algebra_by_name_and_file(tmp_path):
    a = resolve_algebra("A2:2")
    assert a.cartan()[1] == (2, 2)
    p = tmp_path / "b2.json"
    p.write_text(dumps(cartan_to_json(named("B2"))))
    assert resolve_algebra(str(p)).entry_dims() == resolve_algebra("B2").entry_dims()


def test_session_config_validation(monkeypatch):
    with pytest.raises(ValueError):
        SessionConfig(format="xml")
    with pytest.raises(ValueError):
        SessionConfig(jobs=0)
    monkeypatch.setenv("FROBREP_SEED", "17")
    assert SessionConfig.from_env(seed=3).seed == 17
    cfg = SessionConfig(seed=5)
    assert cfg.rng("x", 1).random() == SessionConfig(seed=5).rng("x", 1).random()
    assert cfg.rng("x", 1).random() != cfg.rng("x", 2).random()
