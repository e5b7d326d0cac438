"""Show the summands of the sink tilting module, its Hom grid and the rotated algebra grid."""
from __future__ import annotations

import argparse

from frobrep.serialize import resolve_algebra
from frobrep.tilting import tilting_report


def _grid(g) -> str:
    return "\n".join("    " + " ".join(f"{x:3d}" for x in row) for row in g)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("algebras", nargs="*", default=["A2", "B2", "G2", "A3", "B3", "Kronecker"])
    args = p.parse_args(argv)
    for ref in args.algebras:
        r = tilting_report(resolve_algebra(ref))
        js = r.to_json()
        print(f"{ref}: tilting={r.verdict.ok} routes_agree={r.routes_agree} grid_ok={r.grid.ok}")
        for s in js["summands"]:
            print(f"  {s['name'] or '?':8s} dims {s['dims']}")
        print("  Hom(T_p, T_q):")
        print(_grid(r.grid.grid))
        print("  rotated algebra e_p S e_q:")
        print(_grid(r.grid.expected))


if __name__ == "__main__":
    main()
