"""Command-line interface.

Exit codes: 0 success, 1 verification failure (or a "not Dynkin" refusal),
2 malformed input.  All output is canonical JSON unless ``--format tsv`` is
given to ``roots``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cartan import CartanError, classify, dynkin_shape, gram_minors, valued_quiver
from .config import SessionConfig
from .dynkin_enum import enumerate_modules, module_for_root
from .exactla import QQ, field_name
from .frobcore import CoreError
from .functors import coxeter_minus, coxeter_plus, reflect_minus, reflect_plus, tau, tau_minus
from .homology import ext1, ext1_dim_syzygy
from .repcat import (NotLocallyFree, RepError, hom_dim, injective, projective, random_locally_free,
                     simple_top)
from .serialize import (SchemaError, algebra_to_json, cartan_from_json, document, dumps, load,
                        rep_to_json, reps_document, reps_from_document, resolve_algebra)
from .sweeps import CHECKS, verify
from .tilting import hom_T1_vs_reflection, tilting_report
from .triangalg import AlgebraError
from .weyl import NotDynkin, NotPositiveRoot, positive_part, positive_roots_coxeter, real_roots_orbit_bfs

INPUT_ERRORS = (SchemaError, CartanError, AlgebraError, CoreError, RepError, FileNotFoundError,
                json.JSONDecodeError, KeyError, ValueError)


class Refusal(Exception):
    """A well-formed request the engine declines (exit 1)."""


def _num(x):
    return x if isinstance(x, int) else str(x)


# --- commands ------------------------------------------------------------------


def cmd_classify(args, cfg):
    datum = cartan_from_json(load(args.cartan))
    C, D = datum.C, datum.D
    shape = dynkin_shape(C)
    return document("classification", type=classify(C, D),
                    gram_minors=[_num(m) for m in gram_minors(C, D)],
                    valued_quiver=valued_quiver(C, D, datum.orientation).to_json(),
                    shape=shape), 0


def cmd_roots(args, cfg):
    datum = cartan_from_json(load(args.cartan))
    C, D = datum.C, datum.D
    kind = classify(C, D)
    bfs = sorted(positive_part(real_roots_orbit_bfs(C)), key=lambda x: (sum(x), x))
    if kind != "Dynkin":
        return document("roots", type=kind, coxeter=None, bfs=[list(x) for x in bfs],
                        bfs_bound="truncated", agree=None), 0
    cox = positive_roots_coxeter(C, D)
    agree = {r.root for r in cox} == set(bfs)
    out = document("roots", type=kind, count=len(cox), agree=agree,
                   coxeter=[{"root": list(r.root), "vertex": r.vertex + 1, "r": r.r} for r in cox],
                   bfs=[list(x) for x in bfs])
    return out, 0 if agree else 1


def _roots_tsv(doc) -> str:
    lines = ["root\tvertex\tr"]
    for e in doc["coxeter"] or []:
        lines.append(",".join(map(str, e["root"])) + f"\t{e['vertex']}\t{e['r']}")
    lines.append(f"# agree\t{doc['agree']}")
    return "\n".join(lines) + "\n"


def cmd_algebra(args, cfg):
    alg = resolve_algebra(args.algebra, cfg.field if args.field_given else None)
    alg.validate()
    return algebra_to_json(alg), 0


def resolve_module(spec: str, alg, cfg):
    """``P3``, ``I1``, ``E2``, ``root:1,1``, ``random:K`` or ``file.json[#index]``."""
    head = spec[:1].upper()
    if head in "PIE" and spec[1:].isdigit():
        i = alg.position(int(spec[1:]) - 1)
        return {"P": projective, "I": injective, "E": simple_top}[head](alg, i)
    if spec.startswith("root:"):
        return module_for_root(alg, tuple(int(x) for x in spec[5:].split(","))).module
    if spec.startswith("random:"):
        return random_locally_free(alg, cfg.rng("module", int(spec[7:])))
    path, _, idx = spec.partition("#")
    _, reps = reps_from_document(load(path), alg)
    return reps[int(idx or 0)]


def cmd_rep(args, cfg):
    alg = resolve_algebra(args.algebra, cfg.field if args.field_given else None)
    X = resolve_module(args.module, alg, cfg)
    op, minus = args.op, args.sign == "-"
    if op in ("reflect", "coxeter", "tau"):
        f = {("reflect", False): lambda Z: reflect_plus(Z).rep,
             ("reflect", True): lambda Z: reflect_minus(Z).rep,
             ("coxeter", False): coxeter_plus, ("coxeter", True): coxeter_minus,
             ("tau", False): tau, ("tau", True): tau_minus}[(op, minus)]
        Y = f(X)
        return document("representations", op=op + ("-" if minus else "+"),
                        algebra=algebra_to_json(alg), input=rep_to_json(X),
                        modules=[rep_to_json(Y)]), 0
    if args.other is None:
        raise SchemaError(f"rep {op} needs --other")
    Y = resolve_module(args.other, alg, cfg)
    if op == "hom":
        return document("hom", X=args.module, Y=args.other, dim=hom_dim(X, Y)), 0
    if X.is_locally_free():
        e = ext1(X, Y)
        cocycles = [{f"{i + 1}<{j + 1}": m.to_lists() for (i, j), m in sorted(c.items())}
                    for c in e.cocycles]
        return document("ext1", X=args.module, Y=args.other, dim=e.dim, route="resolution",
                        cocycles=cocycles), 0
    return document("ext1", X=args.module, Y=args.other, dim=ext1_dim_syzygy(X, Y),
                    route="syzygy", cocycles=None), 0


def cmd_enumerate(args, cfg):
    alg = resolve_algebra(args.algebra, cfg.field if args.field_given else None)
    try:
        table = enumerate_modules(alg)
    except NotDynkin as e:
        raise Refusal(str(e)) from None
    return document("root-modules", field=table.field, table=table.to_json(),
                    representations=reps_document(alg, [e.module for e in table.entries])), 0


def cmd_verify(args, cfg):
    alg = resolve_algebra(args.algebra, cfg.field if args.field_given else None)
    try:
        rep = verify(args.check, alg, cfg)
    except NotDynkin as e:
        raise Refusal(str(e)) from None
    doc = document("verification", algebra=alg.name, config=cfg.to_json(), **rep.to_json())
    return doc, 0 if rep.ok else 1


def cmd_tilt(args, cfg):
    alg = resolve_algebra(args.algebra, cfg.field if args.field_given else None)
    mods = []
    if args.modules:
        _, mods = reps_from_document(load(args.modules), alg)
    t = tilting_report(alg, mods)
    return document("tilting", algebra=alg.name, **t.to_json()), 0 if t.ok else 1


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frobrep", description=__doc__.splitlines()[0])
    p.add_argument("--field", default=None, help="QQ (default) or a prime p")
    p.add_argument("--seed", type=int, default=None, help="overridden by FROBREP_SEED")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--format", choices=("json", "tsv"), default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--instances", type=int, default=None, help="random instances per sweep")
    p.add_argument("--fuzz", type=int, default=None, help="fuzzed inputs for the gp sweep")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="Dynkin / Euclidean / Indefinite")
    s.add_argument("cartan")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("roots", parents=[common], help="positive roots by both enumerations")
    s.add_argument("cartan")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("algebra", parents=[common], help="build and validate an algebra")
    s.add_argument("action", choices=("build",))
    s.add_argument("algebra", help="algebra/Cartan/spec file, or a name like B2 or A2:2")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("rep", parents=[common], help="functors and Hom/Ext on a representation")
    s.add_argument("op", choices=("reflect", "coxeter", "tau", "ext", "hom"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--module", required=True)
    s.add_argument("--other", default=None)
    s.add_argument("--sign", choices=("+", "-"), default="+")
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("enumerate", parents=[common], help="modules for all positive roots")
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    s.add_argument("check", choices=CHECKS)
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("tilt-check", parents=[common], help="tilting module report")
    s.add_argument("--algebra", required=True)
    s.add_argument("--modules", default=None)
    s.set_defaults(func=cmd_tilt)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.field_given = args.field is not None
    try:
        cfg = SessionConfig.from_env(field=args.field, seed=args.seed, horizon=args.horizon,
                                     format=args.format, jobs=args.jobs, instances=args.instances,
                                     fuzz=args.fuzz)
        doc, code = args.func(args, cfg)
    except Refusal as e:
        print(dumps({"error": str(e)}), end="")
        return 1
    except (NotPositiveRoot, NotLocallyFree) as e:
        print(f"frobrep: {e}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as e:
        print(f"frobrep: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    text = _roots_tsv(doc) if args.command == "roots" and cfg.format == "tsv" else dumps(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
