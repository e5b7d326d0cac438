"""Projective resolutions, Ext^1, dimension bounds and Gorenstein-projective tests.

For a representation ``X`` the standard sequence

    0 -> (+)_{i<j} P_i (x) B[i,j] (x) X_j  --d-->  (+)_k P_k (x) X_k  --e-->  X -> 0

is exact; when ``X`` is locally free its terms are projective, so it is a
projective resolution and ``Ext^1(X, Y)`` is the cokernel of
``Hom(P', Y) -> Hom(P'', Y)``.  By adjunction both Hom spaces reduce to the
vertex cores, which gives the dimension formula used by ``ext1_dim``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bimod import tensor, tensor_map
from .exactla import Matrix, column_space, hstack, kernel_basis, linear_system, rank, vstack
from .frobcore import intertwiner_equations, module_hom, vec_to_matrix
from .functors import coxeter_plus, tau, tau_minus
from .repcat import (NotLocallyFree, Representation, RepMorphism, direct_sum_all, dual_rep,
                     extend_from_vertex, hom_dim, induced, injective, is_projective, kernel_rep,
                     projective, projective_cover_map, simple_top)
from .triangalg import TriangularAlgebra


@dataclass
class ProjResolution:
    P1: Representation  # P''
    P0: Representation  # P'
    d: RepMorphism
    eps: RepMorphism
    target: Representation
    summands1: list  # (i, j) per summand of P''
    summands0: list  # k per summand of P'

    def is_exact(self) -> bool:
        X = self.target
        for a, b, x, p1, p0 in zip(self.d.parts, self.eps.parts, X.modules,
                                   self.P1.modules, self.P0.modules):
            if p1.dim + x.dim != p0.dim:
                return False
            if a.ncols and rank(a) != a.ncols:
                return False
            if x.dim and rank(b) != x.dim:
                return False
            if a.ncols and b.nrows and not (b @ a).is_zero():
                return False
        return self.d.is_morphism() and self.eps.is_morphism()


def _offsets(mods_list):
    out, o = [], 0
    for m in mods_list:
        out.append(o)
        o += m
    return out


def projective_resolution(X: Representation, require_locally_free: bool = True) -> ProjResolution:
    if require_locally_free and not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    alg = X.algebra
    F = alg.field
    n = alg.n
    pieces0 = [induced(alg, k, X.modules[k]) for k in range(n)]
    P0 = direct_sum_all(pieces0, alg)
    eps_parts = [Matrix.zeros(X.modules[v].dim, 0, F) for v in range(n)]
    for k, piece in enumerate(pieces0):
        f = extend_from_vertex(piece, k, Matrix.identity(X.modules[k].dim, F), X)
        eps_parts = [hstack([a, b], nrows=a.nrows, field=F) for a, b in zip(eps_parts, f)]
    eps = RepMorphism(P0, X, tuple(eps_parts))

    keys = sorted(alg.bimods)
    pieces1 = [induced(alg, i, tensor(alg.bimods[(i, j)], X.modules[j])) for i, j in keys]
    P1 = direct_sum_all(pieces1, alg)
    # vertex offsets of each P' summand inside P0
    offs0 = [_offsets([p.modules[v].dim for p in pieces0]) for v in range(n)]
    d_parts = [Matrix.zeros(P0.modules[v].dim, 0, F) for v in range(n)]
    for (i, j), piece in zip(keys, pieces1):
        B = alg.bimods[(i, j)]
        TB = tensor(B, X.modules[j])
        g_rows = P0.modules[i].dim
        # b (x) x  ->  [b (x) x in P_j (x) X_j at vertex i]  -  [phi(b (x) x) in P_i (x) X_i]
        cols = [[0] * TB.dim for _ in range(g_rows)]
        Pj_i = pieces0[j].modules[i].dim
        start_j = offs0[i][j] + Pj_i - TB.dim
        for c in range(TB.dim):
            cols[start_j + c][c] += 1
        phi = X.maps[(i, j)]
        for r in range(X.modules[i].dim):
            for c in range(TB.dim):
                cols[offs0[i][i] + r][c] -= phi[r, c]
        g = Matrix([[F.norm(x) for x in row] for row in cols], TB.dim, F, True)
        f = extend_from_vertex(piece, i, g, P0)
        d_parts = [hstack([a, b], nrows=a.nrows, field=F) for a, b in zip(d_parts, f)]
    d = RepMorphism(P1, P0, tuple(d_parts))
    return ProjResolution(P1, P0, d, eps, X, keys, list(range(n)))


def _core_hom_dim(M, N) -> int:
    if M.dim == 0 or N.dim == 0:
        return 0
    return len(module_hom(M.core, M, N))


def ext1_dim(X: Representation, Y: Representation) -> int:
    """``dim Ext^1(X, Y)`` for locally free ``X`` via the standard resolution."""
    if not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    alg = X.algebra
    h1 = sum(_core_hom_dim(tensor(B, X.modules[j]), Y.modules[i]) for (i, j), B in alg.bimods.items())
    h0 = sum(_core_hom_dim(a, b) for a, b in zip(X.modules, Y.modules))
    return h1 - h0 + hom_dim(X, Y)


@dataclass
class ExtResult:
    dim: int
    cocycles: list  # each: {(i, j): matrix B[i,j] (x) X_j -> Y_i}


def ext1(X: Representation, Y: Representation) -> ExtResult:
    """``Ext^1(X, Y)`` with explicit cocycle representatives.

    A cocycle ``eta`` gives the extension with vertex spaces ``Y_i + X_i`` and
    arrow maps ``[[phiY, eta], [0, phiX]]``.
    """
    if not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    alg = X.algebra
    F = alg.field
    keys = sorted(alg.bimods)
    z_basis = []  # (key, matrix)
    for key in keys:
        i, j = key
        T = tensor(alg.bimods[key], X.modules[j])
        if T.dim and Y.modules[i].dim:
            for m in module_hom(T.core, T, Y.modules[i]):
                z_basis.append((key, m))
    if not z_basis:
        return ExtResult(0, [])

    def flatten(assign: dict) -> list:
        v = []
        for key in keys:
            i, j = key
            T_dim = alg.bimods[key].right_rank * X.modules[j].dim
            m = assign.get(key)
            for r in range(Y.modules[i].dim):
                v.extend(m.rows[r] if m is not None else [0] * T_dim)
        return v

    nrow = len(flatten({}))
    Z = Matrix.from_columns([flatten({k: m}) for k, m in z_basis], nrow, F)
    # coboundaries: f -> phiY (1 (x) f_j) - f_i phiX
    bnd = []
    for k in range(alg.n):
        a, b = X.modules[k], Y.modules[k]
        if a.dim == 0 or b.dim == 0:
            continue
        for f in module_hom(a.core, a, b):
            parts = {k: f}
            assign = {}
            for (i, j), B in alg.bimods.items():
                m = None
                if j == k:
                    m = Y.maps[(i, j)] @ tensor_map(B, f)
                if i == k:
                    t = f @ X.maps[(i, j)]
                    m = -t if m is None else m - t
                if m is not None:
                    assign[(i, j)] = m
            bnd.append(flatten(assign))
    Bm = Matrix.from_columns(bnd, nrow, F) if bnd else Matrix.zeros(nrow, 0, F)
    rb = rank(Bm) if bnd else 0
    reps = []
    cur = Bm
    for t in range(Z.ncols):
        cand = hstack([cur, Z.take_cols([t])]) if cur.ncols else Z.take_cols([t])
        if rank(cand) > (rank(cur) if cur.ncols else 0):
            cur = cand
            reps.append({z_basis[t][0]: z_basis[t][1]})
    dim = rank(hstack([Bm, Z]) if bnd else Z) - rb
    assert dim == len(reps)
    return ExtResult(dim, reps)


def extension_from_cocycle(X: Representation, Y: Representation, eta: dict) -> Representation:
    """Middle term ``E`` of the extension ``0 -> Y -> E -> X -> 0`` given by a cocycle."""
    from .exactla import block_diag
    alg = X.algebra
    F = alg.field
    mods = [b.direct_sum(a) for a, b in zip(X.modules, Y.modules)]
    maps = {}
    for (i, j), B in alg.bimods.items():
        dyj, dxj = Y.modules[j].dim, X.modules[j].dim
        cols = []
        eta_m = eta.get((i, j))
        for s in range(B.right_rank):
            py = Y.maps[(i, j)].col_block(s * dyj, (s + 1) * dyj)
            px = X.maps[(i, j)].col_block(s * dxj, (s + 1) * dxj)
            e = eta_m.col_block(s * dxj, (s + 1) * dxj) if eta_m is not None else \
                Matrix.zeros(Y.modules[i].dim, dxj, F)
            top = hstack([py, e], nrows=py.nrows, field=F)
            bot = hstack([Matrix.zeros(X.modules[i].dim, dyj, F), px], nrows=px.nrows, field=F)
            cols.append(vstack([top, bot], ncols=dyj + dxj, field=F))
        maps[(i, j)] = hstack(cols, nrows=mods[i].dim, field=F)
    return Representation(alg, mods, maps)


def syzygy(X: Representation) -> tuple[Representation, Representation]:
    """``(Omega X, P)`` from a projective cover-type surjection ``P -> X``."""
    P, eps = projective_cover_map(X)
    K, _ = kernel_rep(eps)
    return K, P


def ext1_dim_syzygy(X: Representation, Y: Representation) -> int:
    """``dim Ext^1(X, Y)`` through ``0 -> Omega X -> P -> X -> 0``; valid for any ``X``."""
    K, P = syzygy(X)
    return hom_dim(K, Y) - hom_dim(P, Y) + hom_dim(X, Y)


def proj_dim_le1(X: Representation) -> bool:
    K, _ = syzygy(X)
    return is_projective(K)


def inj_dim_le1(X: Representation) -> bool:
    return proj_dim_le1(dual_rep(X))


@dataclass
class DimBounds:
    proj_le1: bool
    inj_le1: bool
    resolution_exact: bool | None = None

    def ok(self) -> bool:
        return self.proj_le1 and self.inj_le1


def dim_bounds(X: Representation) -> DimBounds:
    """``(proj.dim X <= 1, inj.dim X <= 1)``, decided through syzygies.

    For locally free inputs the standard resolution is also built and checked
    for exactness.
    """
    exact = None
    if X.is_locally_free():
        exact = projective_resolution(X).is_exact()
    return DimBounds(proj_dim_le1(X), inj_dim_le1(X), exact)


@dataclass
class GorensteinReport:
    ok: bool
    entries: list  # (name, DimBounds)


def gorenstein_check(alg: TriangularAlgebra) -> GorensteinReport:
    entries = []
    for i in range(alg.n):
        for X in (projective(alg, i), injective(alg, i), simple_top(alg, i)):
            entries.append((X.name, dim_bounds(X)))
    ok = all(b.ok() and b.resolution_exact is not False for _, b in entries)
    return GorensteinReport(ok, entries)


@dataclass
class GPVerdict:
    member: bool
    ext_to_projectives: int  # dim Ext^1(X, L)
    coxeter_zero: bool
    inmaps_injective: bool  # in the algebra itself
    chain_injective: bool  # at the sink slot along the rotation chain

    def agree(self) -> bool:
        vals = {self.ext_to_projectives == 0, self.coxeter_zero, self.inmaps_injective,
                self.chain_injective}
        return len(vals) == 1


def gp_membership(X: Representation) -> GPVerdict:
    """Gorenstein-projectivity of a locally free ``X`` by independent witnesses.

    Raises ``AssertionError`` if the witnesses disagree.
    """
    from .functors import reflect_plus
    if not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    alg = X.algebra
    ext = sum(ext1_dim(X, projective(alg, i)) for i in range(alg.n))
    inj = all(X.in_map(i).ncols == 0 or rank(X.in_map(i)) == X.in_map(i).ncols
              for i in range(alg.n))
    chain = True
    Y = X
    for _ in range(alg.n):
        m = Y.in_map(0)
        if m.ncols and rank(m) != m.ncols:
            chain = False
        Y = reflect_plus(Y).rep
    cz = Y.is_zero()
    v = GPVerdict(ext == 0, ext, cz, inj, chain)
    if not v.agree():
        raise AssertionError(f"Gorenstein-projective witnesses disagree: {v}")
    return v


@dataclass
class ARCheck:
    ext: int
    hom_y_tau_x: int
    hom_tauinv_y_x: int

    @property
    def ok(self) -> bool:
        return self.ext == self.hom_y_tau_x == self.hom_tauinv_y_x


def ar_formula_check(X: Representation, Y: Representation, tau_x=None, tauinv_y=None) -> ARCheck:
    if not (X.is_locally_free() and Y.is_locally_free()):
        raise NotLocallyFree("AR formula check needs locally free inputs")
    tx = tau(X) if tau_x is None else tau_x
    ty = tau_minus(Y) if tauinv_y is None else tauinv_y
    return ARCheck(ext1_dim(X, Y), hom_dim(Y, tx), hom_dim(ty, X))


def euler_form(C, D, x, y) -> int:
    """``sum c_k x_k y_k - sum_{i<j} c_i |c_ij| x_j y_i``: Hom minus Ext^1 on ranks."""
    n = len(C)
    val = sum(D[k] * x[k] * y[k] for k in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            val -= D[i] * abs(C[i][j]) * x[j] * y[i]
    return val
