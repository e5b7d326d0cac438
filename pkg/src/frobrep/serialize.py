"""JSON documents for Cartan data, algebras and representations.

Every document carries ``schema_version``; vertices are 1-based on disk and
0-based in memory.  Output is canonical (sorted keys, fixed separators), so
emitting a parsed document reproduces it byte for byte.
"""
from __future__ import annotations

import json
from pathlib import Path

from .cartan import CartanDatum, named
from .exactla import Matrix, field_from_name, field_name
from .frobcore import CoreModule, FrobeniusCore
from .repcat import Representation
from .triangalg import (AlgebraError, TriangularAlgebra, build_generalized_path_algebra, build_gls,
                        build_path_algebra_over_core)

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def document(kind: str, **payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}


def check_version(obj) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    v = obj.get("schema_version", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {v!r}")
    return obj


def load(path) -> dict:
    try:
        return check_version(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: malformed JSON ({e.msg})") from None


# --- Cartan data -------------------------------------------------------------


def cartan_from_json(obj: dict) -> CartanDatum:
    obj = check_version(obj)
    if "C" not in obj:
        raise SchemaError("Cartan document needs a 'C' entry")
    return CartanDatum.from_json(obj)


def cartan_to_json(datum: CartanDatum) -> dict:
    return document("cartan", **datum.to_json())


# --- algebras ----------------------------------------------------------------


def algebra_from_spec(spec: dict, field) -> TriangularAlgebra:
    fam = spec.get("family")
    name = spec.get("name") or None
    if fam == "gls":
        datum = CartanDatum.from_json(spec)
        if not datum.is_ordered():
            datum = datum.ordered()
        return build_gls(datum, field, name)
    if fam == "path_over_core":
        arrows = [(s - 1, t - 1) for s, t in spec["arrows"]]
        core = FrobeniusCore.from_json(spec["core"], field)
        return build_path_algebra_over_core(spec["n"], arrows, core, name or "kQ(x)A")
    if fam == "genpath":
        arrows = [(s - 1, t - 1) for s, t in spec["arrows"]]
        cores = [FrobeniusCore.from_json(c, field) for c in spec["cores"]]
        return build_generalized_path_algebra(spec["n"], arrows, cores, name or "k(Q,A)")
    raise SchemaError(f"unknown algebra family {fam!r}")


def algebra_to_json(alg: TriangularAlgebra) -> dict:
    C, D = alg.cartan()
    spec = dict(alg.spec or {})
    spec["name"] = alg.name
    return document("algebra", field=field_name(alg.field), spec=spec,
                    cartan={"C": [list(r) for r in C], "D": list(D)},
                    entry_dims=alg.entry_dims(), dim=alg.dim())


def algebra_from_json(obj: dict, field=None) -> TriangularAlgebra:
    obj = check_version(obj)
    if "family" in obj:
        return algebra_from_spec(obj, field_from_name(field or obj.get("field")))
    if obj.get("kind") == "cartan" or ("C" in obj and "spec" not in obj):
        F = field_from_name(field or obj.get("field"))
        spec = {"family": "gls", **CartanDatum.from_json(obj).to_json()}
        return algebra_from_spec(spec, F)
    if "spec" not in obj:
        raise SchemaError("algebra document needs a 'spec' entry")
    F = field_from_name(field if field is not None else obj.get("field"))
    return algebra_from_spec(obj["spec"], F)


def resolve_algebra(ref: str, field=None) -> TriangularAlgebra:
    """A path to an algebra or Cartan document, or a name such as ``B2`` or ``A2:2``."""
    p = Path(ref)
    if p.exists():
        return algebra_from_json(load(p), field)
    name, _, scale = ref.partition(":")
    try:
        datum = named(name, int(scale) if scale else 1)
    except (KeyError, ValueError):
        raise SchemaError(f"no algebra file or named datum {ref!r}") from None
    spec = {"family": "gls", **datum.to_json()}
    spec["name"] = ref
    return algebra_from_spec(spec, field_from_name(field))


# --- representations ---------------------------------------------------------


def _matrix(rows, ncols, field) -> Matrix:
    return Matrix([[field(x) for x in r] for r in rows], ncols, field)


def rep_to_json(X: Representation) -> dict:
    alg = X.algebra
    out = X.to_json()
    out.update({"name": X.name or "", "shift": alg.shift, "dims": list(X.dims()),
                "labels": [v + 1 for v in alg.labels]})
    if X.is_locally_free():
        out["rank"] = list(X.rank_vector())
    return out


def rep_from_json(obj: dict, alg: TriangularAlgebra) -> Representation:
    G = alg.rotation(obj.get("shift", 0))
    F = G.field
    mods = []
    for A, m in zip(G.cores, obj["modules"]):
        d = int(m["dim"])
        acts = m.get("action") or [[[0] * d for _ in range(d)] for _ in A.generators]
        mods.append(CoreModule(A, d, tuple(_matrix(a, d, F) for a in acts)))
    if len(mods) != G.n:
        raise SchemaError("wrong number of vertex modules")
    maps = {}
    for key, rows in obj.get("maps", {}).items():
        i, j = (int(x) - 1 for x in key.split("<"))
        B = G.bimods.get((i, j))
        if B is None:
            raise SchemaError(f"no arrow bimodule at {key}")
        maps[(i, j)] = _matrix(rows, B.right_rank * mods[j].dim, F)
    X = Representation(G, mods, maps, name=obj.get("name", ""))
    X.validate()
    return X


def reps_document(alg: TriangularAlgebra, reps) -> dict:
    return document("representations", algebra=algebra_to_json(alg),
                    modules=[rep_to_json(X) for X in reps])


def reps_from_document(obj: dict, alg: TriangularAlgebra | None = None):
    """Modules of a representations document, or of ``enumerate`` output."""
    obj = check_version(obj)
    if "representations" in obj:
        obj = check_version(obj["representations"])
    if alg is None:
        alg = algebra_from_json(obj["algebra"])
    return alg, [rep_from_json(m, alg) for m in obj["modules"]]
