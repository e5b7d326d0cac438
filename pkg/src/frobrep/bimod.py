"""Bimodules free on both sides, their duals, tensor products and the adjunction transport.

A bimodule ``B`` over ``A_i`` (left) and ``A_j`` (right) is a k-space with left
and right generator actions, plus recorded free bases ``L`` (left) and ``R``
(right).  Every ``b`` has unique expansions ``b = sum_l a_l l`` and
``b = sum_r r a_r``; the coefficient maps are read off by inverting the
corresponding structure matrices.

The dual ``DB`` is realized as the k-linear dual of ``B`` with actions
``(a f)(b) = f(b a)`` and ``(f a)(b) = f(a b)``.  Composing with the symmetric
Frobenius functional of ``A_i`` identifies it with ``Hom_{A_i}(B, A_i)``; under
that identification the right free basis ``L*`` consists of the coordinate
functionals of ``L`` and the left free basis ``R*`` of those of ``R``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .exactla import (QQ, Matrix, block_diag, hstack, inverse, kernel_basis, linear_system,
                      rank, vstack)
from .frobcore import (CoreModule, FrobeniusCore, intertwiner_equations, truncated_poly,
                       vec_to_matrix)
from .cartan import CartanError, gls_quantities


class BimoduleError(ValueError):
    pass


class NotLinear(BimoduleError):
    pass


def _unit_blocks(core: FrobeniusCore, count: int, dim: int, index) -> Matrix:
    """Columns ``sum_u unit[u] e_{index(s, u)}`` for ``s < count``."""
    cols = []
    for s in range(count):
        v = [0] * dim
        for u, x in enumerate(core.unit):
            if x:
                v[index(s, u)] = x
        cols.append(v)
    return Matrix.from_columns(cols, dim, core.field)


@dataclass(frozen=True, eq=False)
class Bimodule:
    left_core: FrobeniusCore
    right_core: FrobeniusCore
    dim: int
    left_action: tuple  # per left-core generator: matrix of b -> g b
    right_action: tuple  # per right-core generator: matrix of b -> b g
    left_basis: Matrix  # columns: free basis over the left core
    right_basis: Matrix  # columns: free basis over the right core
    name: str = "B"

    @property
    def field(self):
        return self.left_core.field

    @property
    def left_rank(self) -> int:
        return self.left_basis.ncols

    @property
    def right_rank(self) -> int:
        return self.right_basis.ncols

    @cached_property
    def left_module(self) -> CoreModule:
        return CoreModule(self.left_core, self.dim, self.left_action)

    @cached_property
    def right_module(self) -> CoreModule:
        """``B`` as a left module over the opposite of the right core."""
        return CoreModule(self.right_core.opposite, self.dim, self.right_action)

    def lact(self, a) -> Matrix:
        return self.left_module.act(a)

    def ract(self, a) -> Matrix:
        return self.right_module.act(a)

    @cached_property
    def _left_frame(self) -> Matrix:
        # column (l, u) is e_u * l
        ci = self.left_core.dim
        cols = []
        for t in range(self.left_rank):
            l = self.left_basis.col(t)
            for u in range(ci):
                cols.append(self.left_module.basis_action[u].apply(l))
        return Matrix.from_columns(cols, self.dim, self.field)

    @cached_property
    def _right_frame(self) -> Matrix:
        # column (r, u) is r * e_u
        cj = self.right_core.dim
        cols = []
        for t in range(self.right_rank):
            r = self.right_basis.col(t)
            for u in range(cj):
                cols.append(self.right_module.basis_action[u].apply(r))
        return Matrix.from_columns(cols, self.dim, self.field)

    @cached_property
    def left_coords(self) -> Matrix:
        """Rows ``(l, u)``: the ``u``-th coordinate of the ``A_i``-coefficient of ``l``."""
        try:
            return inverse(self._left_frame)
        except ValueError:
            raise BimoduleError(f"{self.name}: recorded left basis is not free") from None

    @cached_property
    def right_coords(self) -> Matrix:
        try:
            return inverse(self._right_frame)
        except ValueError:
            raise BimoduleError(f"{self.name}: recorded right basis is not free") from None

    def coef_left(self, b) -> list[tuple]:
        """``[a_l]`` with ``b = sum_l a_l l``."""
        v = self.left_coords.apply(b)
        ci = self.left_core.dim
        return [tuple(v[t * ci:(t + 1) * ci]) for t in range(self.left_rank)]

    def coef_right(self, b) -> list[tuple]:
        """``[a_r]`` with ``b = sum_r r a_r``."""
        v = self.right_coords.apply(b)
        cj = self.right_core.dim
        return [tuple(v[t * cj:(t + 1) * cj]) for t in range(self.right_rank)]

    @cached_property
    def left_on_right_basis(self) -> list[list[list[tuple]]]:
        """``[g][s][t]``: coefficient of ``r_s`` in ``g r_t`` for each left generator ``g``."""
        out = []
        for a in self.left_action:
            table = [[None] * self.right_rank for _ in range(self.right_rank)]
            for t in range(self.right_rank):
                coefs = self.coef_right(a.apply(self.right_basis.col(t)))
                for s in range(self.right_rank):
                    table[s][t] = coefs[s]
            out.append(table)
        return out

    def validate(self) -> None:
        for gi, a in enumerate(self.left_action):
            for gj, b in enumerate(self.right_action):
                if a @ b != b @ a:
                    raise BimoduleError(f"{self.name}: left generator {gi} and right generator "
                                        f"{gj} do not commute")
        self.left_module.validate()
        self.right_module.validate()
        if self.left_rank * self.left_core.dim != self.dim:
            raise BimoduleError(f"{self.name}: left basis has the wrong size")
        if self.right_rank * self.right_core.dim != self.dim:
            raise BimoduleError(f"{self.name}: right basis has the wrong size")
        _ = self.left_coords, self.right_coords

    @cached_property
    def dual(self) -> Bimodule:
        d = dual_bimodule(self)
        d.__dict__["dual"] = self
        return d

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "left_action": [m.to_lists() for m in self.left_action],
                "right_action": [m.to_lists() for m in self.right_action],
                "left_free_basis": [list(map(self.field.to_json, c)) for c in self.left_basis.columns()],
                "right_free_basis": [list(map(self.field.to_json, c)) for c in self.right_basis.columns()]}

    def same_data(self, other: Bimodule) -> bool:
        return (self.dim == other.dim and self.left_action == other.left_action
                and self.right_action == other.right_action
                and self.left_basis == other.left_basis and self.right_basis == other.right_basis)


def _functional_rows(coords: Matrix, lam, rank_: int, c: int) -> Matrix:
    # row t: b -> lam(t-th coefficient of b)
    rows = []
    for t in range(rank_):
        block = coords.row_block(t * c, (t + 1) * c)
        rows.append(list((Matrix([list(lam)], c, coords.field) @ block).rows[0]))
    return Matrix(rows, coords.ncols, coords.field, True)


def dual_bimodule(B: Bimodule) -> Bimodule:
    """A fresh copy of the dual ``A_j``-``A_i``-bimodule ``DB``."""
    lam_i = B.left_core.frobenius_form
    lam_j = B.right_core.frobenius_form
    Rstar = _functional_rows(B.right_coords, lam_j, B.right_rank, B.right_core.dim)
    Lstar = _functional_rows(B.left_coords, lam_i, B.left_rank, B.left_core.dim)
    d = Bimodule(B.right_core, B.left_core, B.dim,
                 tuple(m.T for m in B.right_action),
                 tuple(m.T for m in B.left_action),
                 Rstar.T, Lstar.T, name=f"D({B.name})")
    return d


def dual_basis(B: Bimodule, side: str = "left") -> tuple[list[tuple], list[Matrix]]:
    """Free basis elements and their coordinate functionals, as matrices ``B -> A``.

    The functionals are computed from the dual bimodule through the Frobenius
    form (not from the stored coordinate inverse), so the dual-basis identity
    is a genuine check.
    """
    DB = B.dual
    if side == "left":
        core, elems, fvecs = B.left_core, B.left_basis, DB.right_basis
        mult_by = B.left_module.basis_action  # e_u b
    elif side == "right":
        core, elems, fvecs = B.right_core, B.right_basis, DB.left_basis
        mult_by = B.right_module.basis_action  # b e_u
    else:
        raise ValueError("side must be 'left' or 'right'")
    if elems.ncols * core.dim != B.dim:
        raise BimoduleError("not free")
    Ginv = core.gram_inverse
    funcs = []
    for t in range(fvecs.ncols):
        f = Matrix([list(fvecs.col(t))], B.dim, B.field, True)
        # left: x with lam(e_u x) = f(e_u b); right: lam(x e_u) = f(b e_u); symmetric form
        V = vstack([f @ mult_by[u] for u in range(core.dim)])
        funcs.append(Ginv @ V)
    return [elems.col(t) for t in range(elems.ncols)], funcs


def dual_basis_failures(B: Bimodule) -> list[tuple]:
    """Basis vectors where ``b = sum f_l(b) l`` or ``b = sum r f_r(b)`` fails."""
    bad = []
    for side in ("left", "right"):
        elems, funcs = dual_basis(B, side)
        act = B.lact if side == "left" else B.ract
        for u in range(B.dim):
            b = tuple(1 if k == u else 0 for k in range(B.dim))
            total = [0] * B.dim
            for e, f in zip(elems, funcs):
                a = f.apply(b)
                contrib = act(a).apply(e)
                total = [B.field.norm(x + y) for x, y in zip(total, contrib)]
            if tuple(total) != b:
                bad.append((side, u))
    return bad


# --- concrete bimodules -----------------------------------------------------


def gls_bimodule(ci: int, cj: int, cij: int, cji: int, field=QQ, name="B") -> Bimodule:
    """Arrow bimodule of the algebra attached to Cartan data on one edge."""
    if ci * cij != cj * cji or cij >= 0:
        raise CartanError("invalid Cartan data")
    C = ((2, cij), (cji, 2))
    q = gls_quantities(C, (ci, cj), 0, 1)
    G, fij, fji = q.g, q.f_ij, q.f_ji
    Ai, Aj = truncated_poly(ci, field), truncated_poly(cj, field)
    dim = G * fji * cj

    def idx(g, a, b):
        return (g * fji + a) * cj + b

    left = [[0] * dim for _ in range(dim)]
    right = [[0] * dim for _ in range(dim)]
    for g in range(G):
        for a in range(fji):
            for b in range(cj):
                src = idx(g, a, b)
                if a + 1 < fji:
                    left[idx(g, a + 1, b)][src] = 1
                elif b + fij < cj:
                    left[idx(g, 0, b + fij)][src] = 1
                if b + 1 < cj:
                    right[idx(g, a, b + 1)][src] = 1
    lact = (Matrix(left, dim, field),) if ci > 1 else ()
    ract = (Matrix(right, dim, field),) if cj > 1 else ()
    Lcols = [[1 if k == idx(g, 0, b) else 0 for k in range(dim)]
             for g in range(G) for b in range(fij)]
    Rcols = [[1 if k == idx(g, a, 0) else 0 for k in range(dim)]
             for g in range(G) for a in range(fji)]
    B = Bimodule(Ai, Aj, dim, lact, ract, Matrix.from_columns(Lcols, dim, field),
                 Matrix.from_columns(Rcols, dim, field), name)
    if B.left_rank != -cij or B.right_rank != -cji or dim != -ci * cij:
        raise CartanError("invalid Cartan data")
    return B


def free_core_bimodule(A: FrobeniusCore, m: int, name="A^m") -> Bimodule:
    """``A^m`` with the regular actions on both sides."""
    if m < 1:
        raise BimoduleError("multiplicity must be at least 1")
    F = A.field
    lact = tuple(block_diag([A.left_matrix(g)] * m) for g in A.generators)
    ract = tuple(block_diag([A.right_matrix(g)] * m) for g in A.generators)
    basis = _unit_blocks(A, m, m * A.dim, lambda s, u: s * A.dim + u)
    return Bimodule(A, A, m * A.dim, lact, ract, basis, basis, name)


def arrow_bimodule(Ai: FrobeniusCore, Aj: FrobeniusCore, m: int, name="AQA") -> Bimodule:
    """``A_i (k^m) A_j`` over k: the free bimodule on ``m`` arrows, basis ``e_u a_q e_v``."""
    if m < 1:
        raise BimoduleError("multiplicity must be at least 1")
    if Ai.field != Aj.field:
        raise BimoduleError("cores over different fields")
    F = Ai.field
    ci, cj = Ai.dim, Aj.dim
    dim = m * ci * cj

    def idx(q, u, v):
        return (q * ci + u) * cj + v

    lact = []
    for g in Ai.generators:
        L = Ai.left_matrix(g)
        rows = [[0] * dim for _ in range(dim)]
        for q in range(m):
            for u in range(ci):
                for u2 in range(ci):
                    x = L[u2, u]
                    if x:
                        for v in range(cj):
                            rows[idx(q, u2, v)][idx(q, u, v)] = x
        lact.append(Matrix(rows, dim, F, True))
    ract = []
    for g in Aj.generators:
        Rm = Aj.right_matrix(g)
        rows = [[0] * dim for _ in range(dim)]
        for q in range(m):
            for v in range(cj):
                for v2 in range(cj):
                    x = Rm[v2, v]
                    if x:
                        for u in range(ci):
                            rows[idx(q, u, v2)][idx(q, u, v)] = x
        ract.append(Matrix(rows, dim, F, True))
    # left basis a_q e_v (unit on the left), right basis e_u a_q (unit on the right)
    Lcols, Rcols = [], []
    for q in range(m):
        for v in range(cj):
            col = [0] * dim
            for u, x in enumerate(Ai.unit):
                if x:
                    col[idx(q, u, v)] = x
            Lcols.append(col)
        for u in range(ci):
            col = [0] * dim
            for v, x in enumerate(Aj.unit):
                if x:
                    col[idx(q, u, v)] = x
            Rcols.append(col)
    return Bimodule(Ai, Aj, dim, tuple(lact), tuple(ract),
                    Matrix.from_columns(Lcols, dim, F), Matrix.from_columns(Rcols, dim, F), name)


def bimodule_isomorphism(B1: Bimodule, B2: Bimodule, seed: int = 0) -> Matrix | None:
    """An invertible matrix intertwining both actions, or ``None``."""
    if B1.dim != B2.dim or B1.left_core.dim != B2.left_core.dim:
        return None
    n = B1.dim
    F = B1.field
    if n == 0:
        return Matrix.zeros(0, 0, F)
    pairs = list(zip(B1.left_action, B2.left_action)) + list(zip(B1.right_action, B2.right_action))
    sols = kernel_basis(linear_system(n * n, intertwiner_equations(pairs, n, n, F), F))
    mats = [vec_to_matrix(s, n, n, F) for s in sols]
    rng = random.Random(seed)
    for _ in range(8):
        f = Matrix.zeros(n, n, F)
        for m in mats:
            f = f + m.scale(rng.randint(-50, 50) if F == QQ else F.random(rng))
        if rank(f) == n:
            return f
    return None


# --- tensor products B (x)_{A_j} X ----------------------------------------


def tensor(B: Bimodule, X: CoreModule) -> CoreModule:
    """``B (x)_{A_j} X`` realized as ``X^{|R|}`` through the right free basis."""
    memo = B.__dict__.setdefault("_tensor_memo", {})
    hit = memo.get(id(X))
    if hit is not None and hit[0] is X:
        return hit[1]
    k = B.right_rank
    d = X.dim
    act = []
    for table in B.left_on_right_basis:
        blocks = [[X.act(table[s][t]) for t in range(k)] for s in range(k)]
        act.append(_assemble(blocks, k * d, k * d, d, d, X.field))
    out = CoreModule(B.left_core, k * d, tuple(act))
    memo[id(X)] = (X, out)
    return out


def _assemble(blocks, nrows, ncols, br, bc, F) -> Matrix:
    rows = [[0] * ncols for _ in range(nrows)]
    for s, brow in enumerate(blocks):
        for t, blk in enumerate(brow):
            if blk is None:
                continue
            for a in range(br):
                rows[s * br + a][t * bc:(t + 1) * bc] = blk.rows[a]
    return Matrix(rows, ncols, F, True)


def tensor_elem(B: Bimodule, b, X: CoreModule) -> Matrix:
    """Matrix of ``X -> B (x) X``, ``m -> b (x) m``."""
    coefs = B.coef_right(b)
    return vstack([X.act(a) for a in coefs], ncols=X.dim, field=X.field)


def tensor_map(B: Bimodule, f: Matrix) -> Matrix:
    """``id_B (x) f``."""
    return block_diag([f] * B.right_rank, field=f.field)


def check_linear(phi: Matrix, M: CoreModule, N: CoreModule, what="map") -> None:
    for gi, (a, b) in enumerate(zip(M.action, N.action)):
        if phi @ a != b @ phi:
            raise NotLinear(f"not linear: {what} fails to commute with generator {gi}")


def adjunction_transport(B: Bimodule, phi: Matrix, Xj: CoreModule, Xi: CoreModule,
                         check: bool = True) -> Matrix:
    """``phi: B (x) X_j -> X_i`` to ``X_j -> DB (x) X_i``, ``m -> sum_l l* (x) phi(l (x) m)``."""
    DB = B.dual
    if check:
        check_linear(phi, tensor(B, Xj), Xi, "phi")
    out = Matrix.zeros(DB.right_rank * Xi.dim, Xj.dim, Xi.field)
    for t in range(B.left_rank):
        ell = B.left_basis.col(t)
        ell_star = DB.right_basis.col(t)
        out = out + tensor_elem(DB, ell_star, Xi) @ phi @ tensor_elem(B, ell, Xj)
    return out


def adjunction_inverse(B: Bimodule, psi: Matrix, Xj: CoreModule, Xi: CoreModule,
                       check: bool = True) -> Matrix:
    """``psi: X_j -> DB (x) X_i`` back to ``B (x) X_j -> X_i``, ``b (x) m -> sum_l l*(b) psi(m)_l``."""
    DB = B.dual
    if check:
        check_linear(psi, Xj, tensor(DB, Xi), "psi")
    d = Xi.dim
    # psi is expressed in the right basis of DB, which is L* in the order of L
    blocks = []
    for s in range(B.right_rank):
        coefs = B.coef_left(B.right_basis.col(s))
        acc = Matrix.zeros(d, Xj.dim, Xi.field)
        for t, a in enumerate(coefs):
            if any(a):
                acc = acc + Xi.act(a) @ psi.row_block(t * d, (t + 1) * d)
        blocks.append(acc)
    return hstack(blocks, nrows=d, field=Xi.field)
