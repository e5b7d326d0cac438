"""Reflection functors at the sink slot, Coxeter functors, twist and the AR translate.

``reflect_plus`` takes a representation over an algebra ``L`` to one over
``L.rotated``: the sink at position 0 is replaced by the kernel of its in-map,
which then sits at the last position.  ``reflect_minus`` goes back from
``G = L.rotated`` to ``L`` through the cokernel of the out-map at the last
position.  Both act on morphisms, and both are total on representations.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bimod import adjunction_inverse, adjunction_transport, tensor, tensor_map
from .exactla import (Matrix, column_space, hstack, kernel_matrix, quotient_data, solve_matrix,
                      vstack)
from .repcat import NotLocallyFree, Representation, RepMorphism, twist
from .triangalg import AlgebraMismatch, TriangularAlgebra


@dataclass
class FunctorResult:
    rep: Representation
    # reflect_plus: inclusion of the new module into the in-map domain
    # reflect_minus: projection from the out-map codomain onto the new module
    connecting: Matrix
    section: Matrix | None = None


def _blocks(alg: TriangularAlgebra, X: Representation, i: int):
    """Offsets of the summands ``B[i,k] (x) X_k`` in the in-map domain at ``i``."""
    offs = []
    o = 0
    for k in alg.arrows_into(i):
        d = alg.bimods[(i, k)].right_rank * X.modules[k].dim
        offs.append((k, o, d))
        o += d
    return offs, o


def reflect_plus(X: Representation) -> FunctorResult:
    """``F+``: kernel of ``X_{0,in}`` moved to the last slot of the rotated algebra."""
    L = X.algebra
    G = L.rotated
    n = L.n
    dom = X.in_domain(0)
    xin = X.in_map(0)
    if dom.dim:
        K = column_space(kernel_matrix(xin)) if xin.nrows else Matrix.identity(dom.dim, L.field)
    else:
        K = Matrix.zeros(0, 0, L.field)
    new = dom.restrict(K) if dom.dim else dom
    mods = list(X.modules[1:]) + [new]
    maps = {}
    for (i, j), B in L.bimods.items():
        if i > 0:
            maps[(i - 1, j - 1)] = X.maps[(i, j)]
    offs, _ = _blocks(L, X, 0)
    for k, o, d in offs:
        psi = K.row_block(o, o + d)  # X'_new -> B[0,k] (x) X_k
        Bp = G.bimods[(k - 1, n - 1)]  # = D(B[0,k]), whose dual is B[0,k]
        maps[(k - 1, n - 1)] = adjunction_inverse(Bp, psi, new, X.modules[k], check=False)
    return FunctorResult(Representation(G, mods, maps), K)


def out_map(X: Representation) -> tuple[Matrix, list]:
    """``X_{z,out} = (transport of phi[p, z])_p`` at the last position ``z``."""
    G = X.algebra
    z = G.n - 1
    parts, offs, o = [], [], 0
    for p in G.arrows_out(z):
        B = G.bimods[(p, z)]
        t = adjunction_transport(B, X.maps[(p, z)], X.modules[z], X.modules[p], check=False)
        parts.append(t)
        offs.append((p, o, t.nrows))
        o += t.nrows
    if not parts:
        return Matrix.zeros(0, X.modules[z].dim, G.field), offs
    return vstack(parts), offs


def reflect_minus(X: Representation) -> FunctorResult:
    """``F-``: cokernel of the out-map at the last slot, moved to position 0 of the unrotated algebra."""
    G = X.algebra
    L = G.unrotated
    z = G.n - 1
    xout, offs = out_map(X)
    # codomain as an A_0-module: (+)_p B[0, p+1] (x) X_p
    parts = [tensor(L.bimods[(0, p + 1)], X.modules[p]) for p, _, _ in offs]
    from .repcat import _sum_modules
    cod = _sum_modules(L.cores[0], parts)
    if cod.dim:
        img = column_space(xout) if xout.ncols else Matrix.zeros(cod.dim, 0, G.field)
        pi, sigma = quotient_data(img)
        new = cod.quotient(pi, sigma)
    else:
        pi = sigma = Matrix.zeros(0, 0, G.field)
        new = cod
    mods = [new] + list(X.modules[:z])
    maps = {}
    for (i, j), B in G.bimods.items():
        if j < z:
            maps[(i + 1, j + 1)] = X.maps[(i, j)]
    for p, o, d in offs:
        maps[(0, p + 1)] = pi.col_block(o, o + d)
    return FunctorResult(Representation(L, mods, maps), pi, sigma)


def reflect_plus_morphism(f: RepMorphism, FX: FunctorResult, FY: FunctorResult) -> RepMorphism:
    """The morphism ``F+ f``: the unique fill between the kernels."""
    L = f.source.algebra
    X, Y = f.source, f.target
    big = _domain_map(L, f, 0)
    img = big @ FX.connecting
    if FY.connecting.ncols:
        g = solve_matrix(FY.connecting, img)
        if g is None:
            raise AssertionError("kernel fill does not exist")
    else:
        g = Matrix.zeros(0, FX.connecting.ncols, L.field)
    parts = tuple(f.parts[1:]) + (g,)
    return RepMorphism(FX.rep, FY.rep, parts)


def reflect_minus_morphism(f: RepMorphism, FX: FunctorResult, FY: FunctorResult) -> RepMorphism:
    """The morphism ``F- f``: induced map between the cokernels."""
    G = f.source.algebra
    X = f.source
    z = G.n - 1
    # codomain of the out-map at z is (+)_p B[0,p+1] (x) X_p; f acts blockwise
    L = G.unrotated
    blocks = [tensor_map(L.bimods[(0, p + 1)], f.parts[p]) for p in G.arrows_out(z)]
    from .exactla import block_diag
    big = block_diag(blocks, field=G.field) if blocks else Matrix.zeros(0, 0, G.field)
    if FX.section is not None and FX.section.nrows:
        g = FY.connecting @ big @ FX.section
    else:
        g = Matrix.zeros(FY.rep.modules[0].dim, FX.rep.modules[0].dim, G.field)
    parts = (g,) + tuple(f.parts[:z])
    return RepMorphism(FX.rep, FY.rep, parts)


def _domain_map(L, f: RepMorphism, i: int) -> Matrix:
    from .exactla import block_diag
    blocks = [tensor_map(L.bimods[(i, k)], f.parts[k]) for k in L.arrows_into(i)]
    if not blocks:
        return Matrix.zeros(0, 0, L.field)
    return block_diag(blocks, field=L.field)


def reflect_at(X: Representation, k: int, sign: int, chain_base: TriangularAlgebra) -> FunctorResult:
    """``F_k^+`` (``sign=+1``) on reps over rotation ``k-1`` of ``chain_base``, or ``F_k^-`` back.

    ``k`` is 1-based along the rotation chain; for ``F_k^-`` the input lives over
    rotation ``k``.
    """
    if sign > 0:
        expected = chain_base.rotation(k - 1)
        if X.algebra is not expected:
            raise AlgebraMismatch(f"F_{k}^+ needs a representation over rotation {k - 1}")
        return reflect_plus(X)
    expected = chain_base.rotation(k)
    if X.algebra is not expected:
        raise AlgebraMismatch(f"F_{k}^- needs a representation over rotation {k}")
    return reflect_minus(X)


def coxeter_plus(X: Representation) -> Representation:
    """``C+ = F_n^+ ... F_1^+``, landing back over the same algebra."""
    for _ in range(X.algebra.n):
        X = reflect_plus(X).rep
    return X


def coxeter_minus(X: Representation) -> Representation:
    for _ in range(X.algebra.n):
        X = reflect_minus(X).rep
    return X


def coxeter_plus_morphism(f: RepMorphism) -> RepMorphism:
    for _ in range(f.source.algebra.n):
        FX, FY = reflect_plus(f.source), reflect_plus(f.target)
        f = reflect_plus_morphism(f, FX, FY)
    return f


def tau(X: Representation) -> Representation:
    """AR translate of a locally free representation, computed as ``T C+``."""
    if not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    return twist(coxeter_plus(X))


def tau_minus(X: Representation) -> Representation:
    """Inverse AR translate of a locally free representation, ``C- T``."""
    if not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    return coxeter_minus(twist(X))


@dataclass
class TauOrbit:
    verdict: str  # "tau-locally-free" | "not-tau-locally-free" | "inconclusive"
    forward: list  # rank vectors of tau^k X, k = 0, 1, ... (None where not locally free)
    backward: list  # rank vectors of tau^-k X, k = 0, 1, ...
    modules_forward: list
    modules_backward: list


def tau_orbit(X: Representation, horizon: int = 50) -> TauOrbit:
    """Iterate ``tau`` and ``tau^-`` until zero, a non-locally-free term, or ``horizon`` steps."""
    if not X.is_locally_free():
        raise NotLocallyFree("not locally free")
    verdict = "tau-locally-free"
    sides = []
    for step in (tau, tau_minus):
        ranks, mods = [X.rank_vector()], [X]
        Y = X
        closed = False
        for _ in range(horizon):
            Y = step(Y)
            if Y.is_zero():
                closed = True
                break
            if not Y.is_locally_free():
                ranks.append(None)
                mods.append(Y)
                verdict = "not-tau-locally-free"
                closed = True
                break
            ranks.append(Y.rank_vector())
            mods.append(Y)
        if not closed and verdict == "tau-locally-free":
            verdict = "inconclusive"
        sides.append((ranks, mods))
    return TauOrbit(verdict, sides[0][0], sides[1][0], sides[0][1], sides[1][1])


def is_tau_locally_free(X: Representation, horizon: int = 50) -> TauOrbit:
    return tau_orbit(X, horizon)
