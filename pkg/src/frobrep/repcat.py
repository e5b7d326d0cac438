"""Representations of triangular algebras: validation, morphisms, ranks, decomposition.

A representation over an algebra on positions ``0..n-1`` is a core module
``X_i`` per position and, for every arrow bimodule ``B[i, j]``, an
``A_i``-linear map ``phi[i, j]: B[i, j] (x) X_j -> X_i``; the tensor product is
realized through the right free basis of ``B[i, j]`` (see ``bimod.tensor``).
No further relations are imposed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .bimod import adjunction_inverse, tensor, tensor_elem, tensor_map
from .exactla import (QQ, Matrix, block_diag, column_space, hstack, inverse, kernel_basis,
                      kernel_matrix, linear_system, quotient_data, rank, solve_matrix, vstack)
from .frobcore import (CoreModule, NotFree, free_basis, free_rank_any, generated_map,
                       intertwiner_equations, regular_module, top_complement, vec_to_matrix,
                       zero_module)
from .triangalg import AlgebraMismatch, TriangularAlgebra


class RepError(ValueError):
    pass


class NotLocallyFree(RepError):
    pass


@dataclass(frozen=True)
class LocalFreeness:
    ok: bool
    ranks: tuple | None
    position: int | None = None
    witness: NotFree | None = None


@dataclass(eq=False)
class Representation:
    algebra: TriangularAlgebra
    modules: tuple
    maps: dict  # (i, j) -> matrix dim X_i x (|R_ij| dim X_j)
    name: str = ""

    def __post_init__(self):
        self.modules = tuple(self.modules)
        alg = self.algebra
        if len(self.modules) != alg.n:
            raise RepError("one module per vertex required")
        F = alg.field
        maps = {}
        for key, B in alg.bimods.items():
            i, j = key
            shape = (self.modules[i].dim, B.right_rank * self.modules[j].dim)
            m = self.maps.get(key)
            if m is None:
                m = Matrix.zeros(*shape, F)
            if m.shape != shape:
                raise RepError(f"map {key} has shape {m.shape}, expected {shape}")
            maps[key] = m
        extra = set(self.maps) - set(alg.bimods)
        if extra:
            raise RepError(f"maps given for missing arrows {sorted(extra)}")
        self.maps = maps

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def field(self):
        return self.algebra.field

    def dims(self) -> tuple[int, ...]:
        return tuple(M.dim for M in self.modules)

    def total_dim(self) -> int:
        return sum(self.dims())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def validate(self) -> None:
        """Check core-linearity of every structure map."""
        for M in self.modules:
            M.validate()
        for (i, j), phi in sorted(self.maps.items()):
            B = self.algebra.bimods[(i, j)]
            T = tensor(B, self.modules[j])
            for g, (a, b) in enumerate(zip(T.action, self.modules[i].action)):
                if phi @ a != b @ phi:
                    raise RepError(f"map on arrow ({i + 1}, {j + 1}) is not linear for "
                                   f"generator {g}")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except (RepError, ValueError):
            return False
        return True

    # ranks

    def local_ranks(self) -> list:
        return [free_rank_any(M) for M in self.modules]

    def locally_free_report(self) -> LocalFreeness:
        ranks = self.local_ranks()
        for p, r in enumerate(ranks):
            if isinstance(r, NotFree):
                return LocalFreeness(False, None, p, r)
        out = [0] * self.n
        for p, r in enumerate(ranks):
            out[self.algebra.labels[p]] = r
        return LocalFreeness(True, tuple(out))

    def is_locally_free(self) -> bool:
        return self.locally_free_report().ok

    def rank_vector(self) -> tuple:
        """Free ranks indexed by vertex label (the starting algebra's vertex order)."""
        rep = self.locally_free_report()
        if not rep.ok:
            raise NotLocallyFree(f"not locally free at position {rep.position}: {rep.witness}")
        return rep.ranks

    # structure maps

    def in_map(self, i: int) -> Matrix:
        """``X_{i,in}: (+)_{k>i} B[i,k] (x) X_k -> X_i``, blocks ordered by ``k``."""
        ks = self.algebra.arrows_into(i)
        if not ks:
            return Matrix.zeros(self.modules[i].dim, 0, self.field)
        return hstack([self.maps[(i, k)] for k in ks])

    def in_domain(self, i: int) -> CoreModule:
        """The ``A_i``-module ``(+)_{k>i} B[i,k] (x) X_k``."""
        alg = self.algebra
        parts = [tensor(alg.bimods[(i, k)], self.modules[k]) for k in alg.arrows_into(i)]
        return _sum_modules(alg.cores[i], parts)

    def to_json(self) -> dict:
        return {"modules": [M.to_json() for M in self.modules],
                "maps": {f"{i + 1}<{j + 1}": m.to_lists() for (i, j), m in sorted(self.maps.items())}}

    def __repr__(self):
        return f"Representation(dims={self.dims()}, shift={self.algebra.shift})"


def _sum_modules(core, parts) -> CoreModule:
    if not parts:
        return zero_module(core)
    out = parts[0]
    for p in parts[1:]:
        out = out.direct_sum(p)
    return out


# --- constructors ----------------------------------------------------------


def zero_rep(alg: TriangularAlgebra) -> Representation:
    return Representation(alg, [zero_module(A) for A in alg.cores], {})


def simple_top(alg: TriangularAlgebra, i: int) -> Representation:
    """``E_i``: the regular ``A_i``-module at position ``i``, zero elsewhere."""
    mods = [regular_module(A) if p == i else zero_module(A) for p, A in enumerate(alg.cores)]
    return Representation(alg, mods, {}, name=f"E{alg.labels[i] + 1}")


def induced(alg: TriangularAlgebra, i: int, M: CoreModule) -> Representation:
    """``P_i (x)_{A_i} M``: ``X_i = M``, ``X_k = (+)_{k<l<=i} B[k,l] (x) X_l``, summand inclusions."""
    n = alg.n
    mods: list = [None] * n
    maps = {}
    for k in range(n - 1, -1, -1):
        if k > i:
            mods[k] = zero_module(alg.cores[k])
        elif k == i:
            mods[k] = M
        else:
            ls = [l for l in alg.arrows_into(k) if l <= i]
            parts = [tensor(alg.bimods[(k, l)], mods[l]) for l in ls]
            mods[k] = _sum_modules(alg.cores[k], parts)
            off = 0
            total = mods[k].dim
            for l, p in zip(ls, parts):
                inc = Matrix([[1 if r == off + c else 0 for c in range(p.dim)] for r in range(total)],
                             p.dim, alg.field, True) if total else Matrix.zeros(0, p.dim, alg.field)
                maps[(k, l)] = inc
                off += p.dim
    return Representation(alg, mods, maps)


def coinduced(alg: TriangularAlgebra, i: int, N: CoreModule) -> Representation:
    """Right adjoint of restriction to position ``i``.

    ``Y_i = N``, ``Y_k = (+)_{i<=l<k} DB[l,k] (x) Y_l`` for ``k > i``; the map on
    ``B[l, k]`` evaluates the ``l``-summand of ``Y_k``.
    """
    n = alg.n
    mods: list = [None] * n
    maps = {}
    summands: dict = {}
    for k in range(n):
        if k < i:
            mods[k] = zero_module(alg.cores[k])
        elif k == i:
            mods[k] = N
        else:
            ls = [l for l in alg.arrows_out(k) if l >= i]
            parts = [tensor(alg.bimods[(l, k)].dual, mods[l]) for l in ls]
            mods[k] = _sum_modules(alg.cores[k], parts)
            off = 0
            for l, p in zip(ls, parts):
                summands[(l, k)] = (off, p.dim)
                off += p.dim
    for (l, k), B in alg.bimods.items():
        if (l, k) in summands:
            off, d = summands[(l, k)]
            total = mods[k].dim
            proj = Matrix([[1 if c == off + r else 0 for c in range(total)] for r in range(d)],
                          total, alg.field, True) if d else Matrix.zeros(0, total, alg.field)
            maps[(l, k)] = adjunction_inverse(B, proj, mods[k], mods[l], check=False)
    return Representation(alg, mods, maps)


def projective(alg: TriangularAlgebra, i: int) -> Representation:
    X = induced(alg, i, regular_module(alg.cores[i]))
    X.name = f"P{alg.labels[i] + 1}"
    return X


def injective(alg: TriangularAlgebra, i: int) -> Representation:
    X = coinduced(alg, i, regular_module(alg.cores[i]))
    X.name = f"I{alg.labels[i] + 1}"
    return X


def structural_modules(alg: TriangularAlgebra) -> dict:
    """``{"P": [...], "I": [...], "E": [...]}`` by position."""
    return {"P": [projective(alg, i) for i in range(alg.n)],
            "I": [injective(alg, i) for i in range(alg.n)],
            "E": [simple_top(alg, i) for i in range(alg.n)]}


def direct_sum(X: Representation, Y: Representation) -> Representation:
    if X.algebra is not Y.algebra:
        raise AlgebraMismatch("direct sum over different algebras")
    alg = X.algebra
    mods = [a.direct_sum(b) for a, b in zip(X.modules, Y.modules)]
    maps = {}
    for (i, j), B in alg.bimods.items():
        # B (x) (X_j + Y_j) is ordered by right-basis blocks, each block X_j + Y_j
        dxj, dyj = X.modules[j].dim, Y.modules[j].dim
        phiX, phiY = X.maps[(i, j)], Y.maps[(i, j)]
        cols = []
        for s in range(B.right_rank):
            top_x = phiX.col_block(s * dxj, (s + 1) * dxj)
            top_y = phiY.col_block(s * dyj, (s + 1) * dyj)
            cols.append(block_diag([top_x, top_y], field=alg.field))
        maps[(i, j)] = hstack(cols, nrows=mods[i].dim, field=alg.field)
    return Representation(alg, mods, maps)


def direct_sum_all(reps, alg=None) -> Representation:
    reps = list(reps)
    if not reps:
        return zero_rep(alg)
    out = reps[0]
    for r in reps[1:]:
        out = direct_sum(out, r)
    return out


def twist(X: Representation) -> Representation:
    return Representation(X.algebra, X.modules, {k: -m for k, m in X.maps.items()}, X.name)


# --- morphisms -------------------------------------------------------------


@dataclass
class RepMorphism:
    source: Representation
    target: Representation
    parts: tuple  # f_i: X_i -> Y_i

    def is_morphism(self) -> bool:
        X, Y = self.source, self.target
        for i, (f, a, b) in enumerate(zip(self.parts, X.modules, Y.modules)):
            if any(f @ p != q @ f for p, q in zip(a.action, b.action)):
                return False
        for (i, j), B in X.algebra.bimods.items():
            if self.parts[i] @ X.maps[(i, j)] != Y.maps[(i, j)] @ tensor_map(B, self.parts[j]):
                return False
        return True

    def rank(self) -> int:
        return sum(rank(f) for f in self.parts)

    def is_iso(self) -> bool:
        return all(f.is_square() and rank(f) == f.nrows for f in self.parts)

    def compose(self, other: RepMorphism) -> RepMorphism:
        """``self o other``."""
        return RepMorphism(other.source, self.target,
                           tuple(a @ b for a, b in zip(self.parts, other.parts)))


def _hom_layout(X, Y):
    offs, o = [], 0
    for a, b in zip(X.modules, Y.modules):
        offs.append(o)
        o += a.dim * b.dim
    return offs, o


def hom_equations(X: Representation, Y: Representation):
    """Sparse linear equations whose solutions are the morphisms ``X -> Y``."""
    if X.algebra is not Y.algebra:
        raise AlgebraMismatch("hom between representations over different algebras")
    alg = X.algebra
    F = alg.field
    offs, nvar = _hom_layout(X, Y)
    eqs = []
    for i, (a, b) in enumerate(zip(X.modules, Y.modules)):
        if a.dim and b.dim:
            eqs += intertwiner_equations(list(zip(a.action, b.action)), a.dim, b.dim, F, offs[i])
    for (i, j), B in alg.bimods.items():
        mi, ni = X.modules[i].dim, Y.modules[i].dim
        mj, nj = X.modules[j].dim, Y.modules[j].dim
        if ni == 0 or B.right_rank * mj == 0:
            continue
        phiX, phiY = X.maps[(i, j)], Y.maps[(i, j)]
        # f_i phiX = phiY (I (x) f_j): entry (r, (s, m))
        for r in range(ni):
            phiY_row = phiY.rows[r]
            for s in range(B.right_rank):
                for m in range(mj):
                    c = s * mj + m
                    eq: dict = {}
                    for k in range(mi):
                        x = phiX.rows[k][c]
                        if x:
                            v = offs[i] + r * mi + k
                            eq[v] = eq.get(v, 0) + x
                    for y in range(nj):
                        x = phiY_row[s * nj + y]
                        if x:
                            v = offs[j] + y * mj + m
                            eq[v] = eq.get(v, 0) - x
                    eq = {v: x for v, x in eq.items() if x}
                    if eq:
                        eqs.append(eq)
    return eqs, nvar, offs


def hom_space(X: Representation, Y: Representation) -> list[RepMorphism]:
    eqs, nvar, offs = hom_equations(X, Y)
    F = X.field
    if nvar == 0:
        return []
    sols = kernel_basis(linear_system(nvar, eqs, F))
    out = []
    for s in sols:
        parts = tuple(vec_to_matrix(s, b.dim, a.dim, F, offs[i])
                      for i, (a, b) in enumerate(zip(X.modules, Y.modules)))
        out.append(RepMorphism(X, Y, parts))
    return out


def hom_dim(X: Representation, Y: Representation) -> int:
    eqs, nvar, _ = hom_equations(X, Y)
    if nvar == 0:
        return 0
    return nvar - rank(linear_system(nvar, eqs, X.field))


def identity_morphism(X: Representation) -> RepMorphism:
    return RepMorphism(X, X, tuple(Matrix.identity(M.dim, X.field) for M in X.modules))


def _random_scalar(F, rng, lo, hi):
    return rng.randint(lo, hi) if F == QQ else F.random(rng)


def random_combination(basis: list[RepMorphism], X, Y, rng, lo=-3, hi=3) -> RepMorphism:
    F = X.field
    parts = [Matrix.zeros(b.dim, a.dim, F) for a, b in zip(X.modules, Y.modules)]
    for m in basis:
        c = _random_scalar(F, rng, lo, hi)
        if c:
            parts = [p + q.scale(c) for p, q in zip(parts, m.parts)]
    return RepMorphism(X, Y, tuple(parts))


def is_isomorphic(X: Representation, Y: Representation, seed: int = 0, trials: int = 6) -> bool:
    """Exact when true; false negatives have probability below ``(dim/100)^trials``."""
    if X.algebra is not Y.algebra or X.dims() != Y.dims():
        return False
    if X.total_dim() == 0:
        return True
    basis = hom_space(X, Y)
    if not basis:
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_combination(basis, X, Y, rng, -100, 100)
        if f.is_iso():
            return True
    return False


# --- sub- and quotient representations --------------------------------------


def subrep(X: Representation, U: list[Matrix]) -> tuple[Representation, list[Matrix]]:
    """Subrepresentation on column spans ``U[i]`` (must be invariant, independent columns)."""
    alg = X.algebra
    mods = [M.restrict(u) for M, u in zip(X.modules, U)]
    maps = {}
    for (i, j), B in alg.bimods.items():
        img = X.maps[(i, j)] @ tensor_map(B, U[j])
        sol = solve_matrix(U[i], img) if U[i].ncols else (
            Matrix.zeros(0, img.ncols, alg.field) if img.is_zero() else None)
        if sol is None:
            raise RepError(f"subspace is not closed under arrow ({i + 1}, {j + 1})")
        maps[(i, j)] = sol
    return Representation(alg, mods, maps), U


def quotient_rep(X: Representation, U: list[Matrix]) -> tuple[Representation, list[Matrix], list[Matrix]]:
    """Quotient by the subrepresentation spanned by ``U``; returns (rep, projections, sections)."""
    alg = X.algebra
    pis, sigmas, mods = [], [], []
    for M, u in zip(X.modules, U):
        pi, sigma = quotient_data(u) if M.dim else (Matrix.zeros(0, 0, alg.field),) * 2
        pis.append(pi)
        sigmas.append(sigma)
        mods.append(M.quotient(pi, sigma))
    maps = {}
    for (i, j), B in alg.bimods.items():
        maps[(i, j)] = pis[i] @ X.maps[(i, j)] @ tensor_map(B, sigmas[j])
    return Representation(alg, mods, maps), pis, sigmas


def kernel_rep(f: RepMorphism) -> tuple[Representation, list[Matrix]]:
    U = [column_space(kernel_matrix(p)) if p.ncols else Matrix.zeros(0, 0, p.field)
         for p in f.parts]
    return subrep(f.source, U)


def image_spaces(f: RepMorphism) -> list[Matrix]:
    return [column_space(p) if p.nrows else Matrix.zeros(0, 0, p.field) for p in f.parts]


def cokernel_rep(f: RepMorphism):
    return quotient_rep(f.target, image_spaces(f))


# --- decomposition ----------------------------------------------------------


def endomorphisms(X: Representation) -> list[RepMorphism]:
    return hom_space(X, X)


def _power(f: RepMorphism, N: int) -> RepMorphism:
    return RepMorphism(f.source, f.target, tuple(p ** N if p.nrows else p for p in f.parts))


def fitting_split(X: Representation, g: RepMorphism):
    """``X = ker(g^N) + im(g^N)``; returns the two summands or ``None`` if trivial."""
    N = max(1, X.total_dim())
    h = _power(g, N)
    K = [column_space(kernel_matrix(p)) if p.ncols else p for p in h.parts]
    I = image_spaces(h)
    kd = sum(k.ncols for k in K)
    if kd == 0 or kd == X.total_dim():
        return None
    return subrep(X, K)[0], subrep(X, I)[0]


def summand_split(X: Representation, seed: int = 0, trials: int = 32) -> list[Representation]:
    """Split into summands by Fitting decomposition of seeded random endomorphisms.

    Summands that survive ``trials`` attempts are reported as indecomposable;
    this is probabilistic over the rationals (a Las Vegas procedure per split).
    """
    if X.total_dim() == 0:
        return []
    rng = random.Random(seed)
    basis = endomorphisms(X)
    if len(basis) <= 1:
        return [X]
    F = X.field
    for _ in range(trials):
        g = random_combination(basis, X, X, rng)
        for c in (0, 1, -1, 2, -2):
            gc = RepMorphism(X, X, tuple(p - Matrix.identity(p.nrows, F).scale(c) for p in g.parts))
            parts = fitting_split(X, gc)
            if parts:
                a, b = parts
                return (summand_split(a, rng.randrange(1 << 30), trials)
                        + summand_split(b, rng.randrange(1 << 30), trials))
    return [X]


# --- random representations ------------------------------------------------


def random_module_map(M: CoreModule, N: CoreModule, rng, lo=-2, hi=2) -> Matrix:
    from .frobcore import module_hom
    basis = module_hom(M.core, M, N)
    F = M.field
    out = Matrix.zeros(N.dim, M.dim, F)
    for b in basis:
        c = _random_scalar(F, rng, lo, hi)
        if c:
            out = out + b.scale(c)
    return out


def random_rep(alg: TriangularAlgebra, modules, rng, lo=-2, hi=2, density=1.0) -> Representation:
    """Random structure maps on the given vertex modules (each map a random module map)."""
    maps = {}
    for (i, j), B in sorted(alg.bimods.items()):
        T = tensor(B, modules[j])
        if rng.random() <= density:
            maps[(i, j)] = random_module_map(T, modules[i], rng, lo, hi)
    return Representation(alg, modules, maps)


def random_locally_free(alg: TriangularAlgebra, rng, max_rank: int = 2, lo=-2, hi=2,
                        ranks=None) -> Representation:
    from .frobcore import free_module
    if ranks is None:
        ranks = [rng.randint(0, max_rank) for _ in range(alg.n)]
    mods = [free_module(A, r) for A, r in zip(alg.cores, ranks)]
    return random_rep(alg, mods, rng, lo, hi)


def random_module(core, rng, max_dim=3) -> CoreModule:
    """A random (usually non-free) module: quotient of a free module by a random submodule."""
    from .frobcore import free_module
    r = rng.randint(1, 2)
    Fm = free_module(core, r)
    gens = rng.randint(0, r)
    cols = []
    for _ in range(gens):
        v = [rng.randint(-2, 2) for _ in range(Fm.dim)]
        cols.append(v)
    if not cols:
        return Fm
    G = Matrix.from_columns(cols, Fm.dim, core.field)
    sub = column_space(generated_map(Fm, G))
    pi, sigma = quotient_data(sub)
    return Fm.quotient(pi, sigma)


def random_rep_any(alg: TriangularAlgebra, rng, lo=-2, hi=2) -> Representation:
    mods = [random_module(A, rng) if rng.random() < 0.7 else zero_module(A) for A in alg.cores]
    return random_rep(alg, mods, rng, lo, hi)


# --- duality ----------------------------------------------------------------


def dual_rep(X: Representation) -> Representation:
    """``DX`` over the opposite algebra: transposed vertex modules and arrow maps."""
    alg = X.algebra
    op = alg.opposite
    n = alg.n
    mods = [None] * n
    for p, M in enumerate(X.modules):
        A = alg.cores[p]
        mods[n - 1 - p] = CoreModule(A.opposite, M.dim, tuple(a.T for a in M.action))
    maps = {}
    for (i, j), B in alg.bimods.items():
        # DX_i (x) B -> DX_j, block l: f -> f o phi(l (x) -)
        Xi, Xj = X.modules[i], X.modules[j]
        phi = X.maps[(i, j)]
        blocks = [(phi @ tensor_elem(B, B.left_basis.col(t), Xj)).T for t in range(B.left_rank)]
        maps[(n - 1 - j, n - 1 - i)] = hstack(blocks, nrows=Xj.dim, field=alg.field)
    return Representation(op, mods, maps)


def is_projective(Y: Representation) -> bool:
    """Every in-map injective with free cokernel over the vertex core."""
    for i in range(Y.n):
        m = Y.in_map(i)
        if m.ncols and rank(m) != m.ncols:
            return False
        dom = Y.in_domain(i)
        if m.ncols:
            pi, sigma = quotient_data(column_space(m))
            Q = Y.modules[i].quotient(pi, sigma)
        else:
            Q = Y.modules[i]
        if isinstance(free_rank_any(Q), NotFree):
            return False
    return True


def projective_cover_map(X: Representation) -> tuple[Representation, RepMorphism]:
    """A surjection ``(+)_k P_k (x) F_k -> X`` with ``F_k`` free covers of the vertex tops."""
    from .frobcore import free_module
    alg = X.algebra
    pieces = []
    gens = []
    for k, M in enumerate(X.modules):
        T = top_complement(M)
        if T.ncols == 0:
            continue
        Fk = free_module(alg.cores[k], T.ncols)
        pieces.append(induced(alg, k, Fk))
        gens.append((k, generated_map(M, T)))
    P = direct_sum_all(pieces, alg)
    # map on each induced piece: the universal extension of the vertex map
    parts = [Matrix.zeros(M.dim, 0, alg.field) for M in X.modules]
    for piece, (k, g) in zip(pieces, gens):
        f = extend_from_vertex(piece, k, g, X)
        parts = [hstack([a, b], nrows=a.nrows, field=alg.field) for a, b in zip(parts, f)]
    return P, RepMorphism(P, X, tuple(parts))


def extend_from_vertex(P: Representation, k: int, g: Matrix, X: Representation) -> list[Matrix]:
    """The morphism ``induced(k, M) -> X`` extending ``g: M -> X_k``."""
    alg = X.algebra
    f: list = [None] * alg.n
    for p in range(alg.n - 1, -1, -1):
        if p > k:
            f[p] = Matrix.zeros(X.modules[p].dim, 0, alg.field)
        elif p == k:
            f[p] = g
        else:
            ls = [l for l in alg.arrows_into(p) if l <= k]
            blocks = [X.maps[(p, l)] @ tensor_map(alg.bimods[(p, l)], f[l]) for l in ls]
            f[p] = hstack(blocks, nrows=X.modules[p].dim, field=alg.field)
    return f
