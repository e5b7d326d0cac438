"""Run every verification check on every bundled algebra and print a summary table.

    python scripts/acceptance_sweep.py --instances 200 --fuzz 300 --jobs 4 -o sweep.json
"""
from __future__ import annotations

import argparse
import json
import time

from frobrep.cartan import DYNKIN, classify
from frobrep.config import SessionConfig
from frobrep.serialize import document, dumps, resolve_algebra
from frobrep.sweeps import CHECKS, verify

ALGEBRAS = ["A2", "A2:2", "B2", "G2", "A3", "B3", "C3", "Kronecker"]
DYNKIN_ONLY = {"bijection"}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--fuzz", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--algebras", nargs="*", default=ALGEBRAS)
    p.add_argument("-o", "--output", default=None)
    args = p.parse_args(argv)
    cfg = SessionConfig.from_env(seed=args.seed, instances=args.instances, fuzz=args.fuzz, jobs=args.jobs)

    rows, bad = [], 0
    for ref in args.algebras:
        alg = resolve_algebra(ref)
        C, D = alg.cartan()
        dynkin = classify(C, D) == DYNKIN
        for check in CHECKS:
            if check in DYNKIN_ONLY and not dynkin:
                continue
            t0 = time.perf_counter()
            r = verify(check, alg, cfg)
            dt = time.perf_counter() - t0
            bad += not r.ok
            rows.append({"algebra": ref, "check": check, "ok": r.ok, "instances": r.instances,
                         "failures": len(r.failures), "seconds": round(dt, 3)})
            print(f"{ref:10s} {check:12s} {'ok' if r.ok else 'FAIL':4s} {r.instances:6d} {dt:7.2f}s", flush=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dumps(document("sweep-summary", config=cfg.to_json(), rows=rows)))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
