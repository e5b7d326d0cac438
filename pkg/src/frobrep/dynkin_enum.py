"""Indecomposable tau-locally free modules from positive roots, and the checks around them.

Enumeration is root driven: each positive root ``x`` gets a descent witness
``(t, i)`` and its module is built as ``C-^t F^- ... F^- E`` where ``E`` is the
regular core module sitting at the sink slot of the ``i``-th rotation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cartan import DYNKIN, classify
from .exactla import field_name
from .functors import coxeter_minus, reflect_minus, tau_minus, tau_orbit
from .homology import dim_bounds, ext1_dim
from .repcat import Representation, is_isomorphic, projective, simple_top
from .triangalg import TriangularAlgebra
from .weyl import (NotDynkin, NotPositiveRoot, coxeter, descent_witness, infinite_family,
                   positive_roots_coxeter, real_roots_orbit_bfs, positive_part)


@dataclass
class RootModule:
    root: tuple
    witness: tuple  # (t, i)
    module: Representation
    indecomposable: bool = True  # certified by the construction


@dataclass
class RootModuleTable:
    entries: list
    field: str

    def roots(self) -> list:
        return [e.root for e in self.entries]

    def by_root(self) -> dict:
        return {e.root: e for e in self.entries}

    def to_json(self) -> list:
        return [{"root": list(e.root), "witness": list(e.witness),
                 "module_ref": f"M{k}", "dims": list(e.module.dims())}
                for k, e in enumerate(self.entries)]


def _require_dynkin(alg: TriangularAlgebra):
    C, D = alg.cartan()
    if classify(C, D) != DYNKIN:
        raise NotDynkin("not Dynkin")
    return C, D


def module_for_root(alg: TriangularAlgebra, x) -> RootModule:
    C, D = _require_dynkin(alg)
    x = tuple(x)
    w = descent_witness(C, D, x)
    if x not in positive_part(real_roots_orbit_bfs(C)):
        raise NotPositiveRoot(f"{x} is not a positive root")
    G = alg.rotation(w.i)
    M = simple_top(G, 0)
    for _ in range(w.i):
        M = reflect_minus(M).rep
    assert M.algebra is alg
    for _ in range(w.t):
        M = coxeter_minus(M)
    rv = M.rank_vector()
    if rv != x:
        raise AssertionError(f"rank mismatch for root {x}: got {rv}")
    if not M.is_locally_free():
        raise AssertionError(f"module for root {x} is not locally free")
    M.name = "M" + "".join(map(str, x))
    return RootModule(x, (w.t, w.i), M)


def enumerate_modules(alg: TriangularAlgebra, check_iso: bool = True) -> RootModuleTable:
    C, D = _require_dynkin(alg)
    entries = [module_for_root(alg, r.root) for r in positive_roots_coxeter(C, D)]
    if check_iso:
        for a in range(len(entries)):
            for b in range(a + 1, len(entries)):
                if is_isomorphic(entries[a].module, entries[b].module):
                    raise AssertionError(f"modules for {entries[a].root} and {entries[b].root} are isomorphic")
    return RootModuleTable(entries, field_name(alg.field))


@dataclass
class BijectionReport:
    ok: bool
    count: int
    expected: int
    injective: bool
    surjective: bool
    tau_locally_free: bool
    rigid: bool
    bounds: bool
    orbit_law: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"check": "bijection", "ok": self.ok, "count": self.count,
                "expected": self.expected, "legs": {
                    "injective": self.injective, "surjective": self.surjective,
                    "tau_locally_free": self.tau_locally_free, "rigid": self.rigid,
                    "dim_bounds": self.bounds, "orbit_law": self.orbit_law},
                "failures": self.failures}


def orbit_law_failures(alg: TriangularAlgebra, M: Representation, roots: set, horizon: int = 50):
    """Check ``rank tau^k M = c^k rank M`` and membership in ``roots`` along the orbit."""
    C, _ = alg.cartan()
    orb = tau_orbit(M, horizon)
    bad = []
    x = M.rank_vector()
    for sign, ranks in ((1, orb.forward), (-1, orb.backward)):
        for k, r in enumerate(ranks):
            if r is None:
                bad.append({"root": list(x), "step": sign * k, "reason": "not locally free"})
                continue
            if r != coxeter(C, sign * k, x):
                bad.append({"root": list(x), "step": sign * k, "rank": list(r),
                            "reason": "rank law"})
            if r not in roots:
                bad.append({"root": list(x), "step": sign * k, "rank": list(r),
                            "reason": "left the table"})
    if orb.verdict != "tau-locally-free":
        bad.append({"root": list(x), "reason": orb.verdict})
    return bad


def verify_bijection(alg: TriangularAlgebra, table: RootModuleTable | None = None) -> BijectionReport:
    C, D = _require_dynkin(alg)
    table = table or enumerate_modules(alg)
    roots = set(positive_part(real_roots_orbit_bfs(C)))
    ranks = [e.module.rank_vector() for e in table.entries]
    injective = len(set(ranks)) == len(ranks)
    surjective = set(ranks) == roots
    fails = []
    tlf = rigid = bounds = law = True
    for e in table.entries:
        M = e.module
        bad = orbit_law_failures(alg, M, roots)
        if bad:
            law = False
            if any(b["reason"] in ("not locally free", "not-tau-locally-free", "inconclusive") for b in bad):
                tlf = False
            fails.extend(bad)
        if ext1_dim(M, M) != 0:
            rigid = False
            fails.append({"root": list(e.root), "reason": "not rigid"})
        if not dim_bounds(M).ok():
            bounds = False
            fails.append({"root": list(e.root), "reason": "dimension bound"})
    ok = injective and surjective and tlf and rigid and bounds and law
    return BijectionReport(ok, len(ranks), len(roots), injective, surjective, tlf, rigid,
                           bounds, law, fails)


@dataclass
class Preprojective:
    root: tuple
    vertex: int
    r: int
    module: Representation


def non_dynkin_witness(alg: TriangularAlgebra, N: int) -> list[Preprojective]:
    """``N`` modules ``tau^{-r} P_i`` with pairwise different rank vectors ``c^{-r} beta_i``."""
    C, D = alg.cartan()
    if classify(C, D) == DYNKIN:
        raise ValueError("is Dynkin")
    out = []
    chains: dict = {}  # vertex -> [P_i, tau^- P_i, ...]
    for tr in infinite_family(C, D, N):
        ch = chains.setdefault(tr.vertex, [projective(alg, tr.vertex)])
        while len(ch) <= tr.r:
            ch.append(tau_minus(ch[-1]))
        M = ch[tr.r]
        if M.rank_vector() != tr.root:
            raise AssertionError(f"rank of tau^-{tr.r} P{tr.vertex + 1} is {M.rank_vector()}, expected {tr.root}")
        out.append(Preprojective(tr.root, tr.vertex, tr.r, M))
    return out
