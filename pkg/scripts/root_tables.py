"""Print, for each Cartan datum in data/cartan, its type and the positive roots with their (vertex, r) tags."""
from __future__ import annotations

import argparse
from pathlib import Path

from frobrep.cartan import DYNKIN, classify
from frobrep.serialize import cartan_from_json, load
from frobrep.weyl import positive_part, positive_roots_coxeter, real_roots_orbit_bfs

DATA = Path(__file__).resolve().parent.parent / "data" / "cartan"


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("files", nargs="*", type=Path)
    args = p.parse_args(argv)
    for f in args.files or sorted(DATA.glob("*.json")):
        d = cartan_from_json(load(f))
        kind = classify(d.C, d.D)
        if kind != DYNKIN:
            print(f"{f.stem}: {kind}, {len(positive_part(real_roots_orbit_bfs(d.C)))} real positive roots in the BFS window")
            continue
        roots = positive_roots_coxeter(d.C, d.D)
        agree = {r.root for r in roots} == positive_part(real_roots_orbit_bfs(d.C))
        print(f"{f.stem}: {kind}, {len(roots)} positive roots, BFS agrees: {agree}")
        for r in roots:
            print(f"  {r.root}  vertex {r.vertex + 1}  r={r.r}")


if __name__ == "__main__":
    main()
