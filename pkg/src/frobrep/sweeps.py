"""Seeded verification sweeps with machine-readable failure witnesses.

Each sweep is a list of independent instances; instance ``k`` draws its
randomness from ``cfg.rng(check, k)``, so results do not depend on how the
instances are split across worker processes.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cartan import DYNKIN, classify
from .config import SessionConfig
from .dynkin_enum import enumerate_modules, verify_bijection
from .functors import reflect_minus, reflect_plus, tau, tau_minus
from .homology import ar_formula_check, gorenstein_check, gp_membership
from .repcat import (hom_dim, hom_space, injective, projective, random_combination,
                     random_locally_free, random_rep_any)
from .serialize import algebra_from_json, algebra_to_json, rep_to_json
from .tilting import build_T1, hom_T1_vs_reflection, theta_route, tilting_report


@dataclass
class SweepReport:
    check: str
    instances: int
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.check, "ok": self.ok, "instances": self.instances,
                "failures": self.failures, **self.details}


def _is_dynkin(alg) -> bool:
    C, D = alg.cartan()
    return classify(C, D) == DYNKIN


def _random_pair_rep(alg, rng, k):
    return random_locally_free(alg, rng) if k % 2 == 0 else random_rep_any(alg, rng)


# --- instance functions: (alg, cfg, k, ctx) -> failure dict or None ----------


def _adjunction(alg, cfg, k, ctx):
    rng = cfg.rng("adjunction", k)
    G = alg.rotated
    X = _random_pair_rep(G, rng, k)
    Y = _random_pair_rep(alg, rng, k // 2)
    a = hom_dim(reflect_minus(X).rep, Y)
    b = hom_dim(X, reflect_plus(Y).rep)
    if a != b:
        return {"k": k, "hom_FminusX_Y": a, "hom_X_FplusY": b,
                "X": rep_to_json(X), "Y": rep_to_json(Y)}
    return None


def _ar_pairs(alg, cfg, ctx):
    mods = ctx.get("mods")
    if mods is None:
        mods = [e.module for e in enumerate_modules(alg, check_iso=False).entries] if _is_dynkin(alg) else []
        ctx["mods"] = mods
        ctx["taus"] = [tau(M) for M in mods]
        ctx["tauinvs"] = [tau_minus(M) for M in mods]
    return mods


def _ar(alg, cfg, k, ctx):
    mods = _ar_pairs(alg, cfg, ctx)
    m = len(mods)
    if k < m * m:
        a, b = divmod(k, m)
        X, Y = mods[a], mods[b]
        r = ar_formula_check(X, Y, ctx["taus"][a], ctx["tauinvs"][b])
    else:
        rng = cfg.rng("ar-formula", k)
        X, Y = random_locally_free(alg, rng), random_locally_free(alg, rng)
        r = ar_formula_check(X, Y)
    if not r.ok:
        return {"k": k, "ext": r.ext, "hom_Y_tauX": r.hom_y_tau_x, "hom_tauinvY_X": r.hom_tauinv_y_x,
                "X": rep_to_json(X), "Y": rep_to_json(Y)}
    return None


def _gp_inputs(alg, cfg, ctx):
    mods = ctx.get("gp")
    if mods is None:
        mods = [projective(alg, i) for i in range(alg.n)] + [injective(alg, i) for i in range(alg.n)]
        if _is_dynkin(alg):
            mods += [e.module for e in enumerate_modules(alg, check_iso=False).entries]
        ctx["gp"] = mods
    return mods


def _gp(alg, cfg, k, ctx):
    mods = _gp_inputs(alg, cfg, ctx)
    X = mods[k] if k < len(mods) else random_locally_free(alg, cfg.rng("gp", k))
    try:
        v = gp_membership(X)
    except AssertionError as e:
        return {"k": k, "error": str(e), "X": rep_to_json(X)}
    ctx.setdefault("members", 0)
    ctx["members"] += v.member
    return None


def _tilting(alg, cfg, k, ctx):
    if "T" not in ctx:
        ctx["T"], ctx["route"] = build_T1(alg), theta_route(alg)
    rng = cfg.rng("tilting", k)
    X = _random_pair_rep(alg, rng, k)
    Y = _random_pair_rep(alg, rng, k + 1)
    hs = hom_space(X, Y)
    f = random_combination(hs, X, Y, rng) if hs else None
    c = hom_T1_vs_reflection(alg, X, ctx["T"], ctx["route"], Y if f else None, f, seed=k)
    if not c.ok:
        return {"k": k, "hom": c.hom_dims, "reflected": c.reflected_dims, "natural": c.natural,
                "X": rep_to_json(X)}
    return None


INSTANCE = {"adjunction": _adjunction, "ar-formula": _ar, "gp": _gp, "tilting": _tilting}


def _count(check: str, alg, cfg: SessionConfig) -> int:
    if check == "adjunction" or check == "tilting":
        return cfg.instances
    if check == "ar-formula":
        m = len(_ar_pairs(alg, cfg, {})) if _is_dynkin(alg) else 0
        return m * m + (cfg.instances if m == 0 else 0)
    if check == "gp":
        return len(_gp_inputs(alg, cfg, {})) + cfg.fuzz
    raise KeyError(check)


def _worker(args):
    check, doc, cfg, ks = args
    alg = algebra_from_json(doc)
    ctx: dict = {}
    fails = [f for k in ks if (f := INSTANCE[check](alg, cfg, k, ctx)) is not None]
    return fails, ctx.get("members", 0)


def run_instances(check: str, alg, cfg: SessionConfig) -> SweepReport:
    n = _count(check, alg, cfg)
    ks = list(range(n))
    if cfg.jobs > 1 and n > 1 and alg.spec is not None:
        doc = algebra_to_json(alg)
        chunks = [ks[r::cfg.jobs] for r in range(cfg.jobs)]
        with ProcessPoolExecutor(cfg.jobs) as ex:
            results = list(ex.map(_worker, [(check, doc, cfg, c) for c in chunks]))
        fails = sorted((f for r, _ in results for f in r), key=lambda f: f["k"])
        members = sum(m for _, m in results)
    else:
        ctx: dict = {}
        fails = [f for k in ks if (f := INSTANCE[check](alg, cfg, k, ctx)) is not None]
        members = ctx.get("members", 0)
    rep = SweepReport(check, n, fails)
    if check == "gp":
        rep.details["members"] = members
    return rep


def verify(check: str, alg, cfg: SessionConfig) -> SweepReport:
    if check == "bijection":
        r = verify_bijection(alg)
        return SweepReport("bijection", r.count, r.failures if r.ok else (r.failures or [r.to_json()["legs"]]),
                           {"count": r.count, "expected": r.expected, "legs": r.to_json()["legs"]})
    if check == "gorenstein":
        g = gorenstein_check(alg)
        fails = [{"module": name, "proj_le1": b.proj_le1, "inj_le1": b.inj_le1,
                  "resolution_exact": b.resolution_exact}
                 for name, b in g.entries if not (b.ok() and b.resolution_exact is not False)]
        return SweepReport("gorenstein", len(g.entries), fails)
    if check == "tilting":
        t = tilting_report(alg)
        rep = run_instances("tilting", alg, cfg)
        head = t.to_json()
        if not t.ok:
            rep.failures.insert(0, {"k": -1, "report": head})
        rep.details.update({k: head[k] for k in ("summands", "end_grid", "rotated_grid",
                                                  "routes_agree", "summand_count", "proj_le1", "ext_self")})
        return rep
    return run_instances(check, alg, cfg)


CHECKS = ("bijection", "adjunction", "ar-formula", "gorenstein", "gp", "tilting")
