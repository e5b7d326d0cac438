"""Basic local Frobenius algebras given by structure constants, and their modules.

A core is stored through its multiplication table on a k-basis together with
a list of generators of the radical.  A module is a k-vector space with one
action matrix per generator; the action of an arbitrary element is obtained by
writing it as a combination of words in the generators.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .exactla import (QQ, Matrix, hstack, inverse, kernel_basis, linear_system,
                      nilpotent_block_profile, rank, solve, vstack)


class CoreError(ValueError):
    pass


class UnsupportedCore(CoreError):
    pass


class NotFrobenius(CoreError):
    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


@dataclass(frozen=True)
class NotFree:
    """Witness that a module is not free: its Jordan profile or top-dimension data."""

    profile: tuple
    reason: str = "block profile is not uniform of size c"


@dataclass(frozen=True, eq=False)
class FrobeniusCore:
    name: str
    dim: int
    mult: tuple  # mult[u][v] = coordinates of e_u e_v
    unit: tuple
    generators: tuple  # coordinate vectors generating the radical
    field: object = QQ
    form: tuple | None = None  # optional explicit Frobenius functional

    def __post_init__(self):
        F = self.field
        mult = tuple(tuple(tuple(F(x) for x in self.mult[u][v]) for v in range(self.dim))
                     for u in range(self.dim))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", tuple(F(x) for x in self.unit))
        object.__setattr__(self, "generators", tuple(tuple(F(x) for x in g) for g in self.generators))
        if self.form is not None:
            object.__setattr__(self, "form", tuple(F(x) for x in self.form))

    # multiplication

    def basis_vector(self, u: int) -> tuple:
        return tuple(1 if k == u else 0 for k in range(self.dim))

    def multiply(self, a: Sequence, b: Sequence) -> tuple:
        return self.left_matrix(a).apply(b)

    @cached_property
    def _left_basis(self) -> list[Matrix]:
        c = self.dim
        return [Matrix.from_columns([self.mult[u][v] for v in range(c)], c, self.field)
                for u in range(c)]

    @cached_property
    def _right_basis(self) -> list[Matrix]:
        c = self.dim
        return [Matrix.from_columns([self.mult[v][u] for v in range(c)], c, self.field)
                for u in range(c)]

    def _combine(self, mats, a):
        out = Matrix.zeros(self.dim, self.dim, self.field)
        for x, m in zip(a, mats):
            if x:
                out = out + m.scale(x)
        return out

    def left_matrix(self, a) -> Matrix:
        """Matrix of ``y -> a y``."""
        return self._combine(self._left_basis, a)

    def right_matrix(self, a) -> Matrix:
        """Matrix of ``y -> y a``."""
        return self._combine(self._right_basis, a)

    # words in the generators

    @cached_property
    def word_basis(self) -> tuple[tuple[tuple[int, ...], ...], Matrix]:
        """Words whose products form a k-basis, and the inverse change-of-basis matrix.

        Word ``(g1, g2, ...)`` stands for the product ``g1 g2 ...``.
        """
        c = self.dim
        words = [()]
        vecs = [self.unit]
        frontier = [((), self.unit)]
        while frontier and len(words) < c:
            nxt = []
            for w, v in frontier:
                for gi, g in enumerate(self.generators):
                    nv = self.multiply(g, v)
                    cand = Matrix.from_columns(vecs + [nv], c, self.field)
                    if rank(cand) > len(vecs):
                        words.append((gi,) + w)
                        vecs.append(nv)
                        nxt.append(((gi,) + w, nv))
            frontier = nxt
        if len(words) != c:
            raise CoreError(f"generators of {self.name} do not generate the algebra")
        W = Matrix.from_columns(vecs, c, self.field)
        return tuple(words), inverse(W)

    def word_coordinates(self, a) -> tuple:
        return self.word_basis[1].apply(a)

    # structure checks

    def check_algebra(self) -> None:
        c = self.dim
        u = self.unit
        for v in range(c):
            e = self.basis_vector(v)
            if self.multiply(u, e) != e or self.multiply(e, u) != e:
                raise CoreError(f"unit law fails on basis element {v}")
        for a in range(c):
            La = self._left_basis[a]
            for b in range(c):
                ab = self.mult[a][b]
                if self.left_matrix(ab) != La @ self._left_basis[b]:
                    raise CoreError(f"associativity fails at ({a},{b},*)")

    @cached_property
    def radical(self) -> Matrix:
        """Columns spanning the span of all nonempty generator words."""
        words, _ = self.word_basis
        vecs = [self.word_vector(w) for w in words if w]
        return Matrix.from_columns(vecs, self.dim, self.field)

    def word_vector(self, w) -> tuple:
        v = self.unit
        for gi in reversed(w):
            v = self.multiply(self.generators[gi], v)
        return v

    def is_local(self) -> bool:
        """Radical of codimension one and every generator nilpotent."""
        if rank(self.radical) != self.dim - 1:
            return False
        for g in self.generators:
            try:
                nilpotent_block_profile(self.left_matrix(g))
            except ValueError:
                return False
        return True

    @cached_property
    def socle(self) -> Matrix:
        """Elements annihilated by every generator on the left."""
        if not self.generators:
            return Matrix.identity(self.dim, self.field)
        stacked = vstack([self.left_matrix(g) for g in self.generators])
        return Matrix.from_columns(kernel_basis(stacked), self.dim, self.field)

    @cached_property
    def frobenius_form(self) -> tuple:
        """A symmetric functional ``lam`` whose form ``(x, y) -> lam(x y)`` is nondegenerate."""
        if self.form is not None:
            lam = self.form
            if not self._form_ok(lam, symmetric=True):
                raise NotFrobenius(f"given form on {self.name} is degenerate or not symmetric")
            return lam
        sol = self._trace_forms()
        rng = random.Random(1)
        candidates = list(sol) + [
            tuple(self.field.norm(sum(rng.randint(-5, 5) * s[k] for s in sol))
                  for k in range(self.dim)) for _ in range(20)]
        for lam in candidates:
            if self._form_ok(lam, symmetric=False):
                return lam
        raise NotFrobenius(f"{self.name} has no nondegenerate symmetric associative form",
                           certificate={"symmetric_forms": len(sol)})

    def _trace_forms(self) -> list[tuple]:
        # functionals vanishing on all commutators e_u e_v - e_v e_u
        c = self.dim
        eqs = []
        for u in range(c):
            for v in range(u + 1, c):
                d = [self.mult[u][v][k] - self.mult[v][u][k] for k in range(c)]
                eqs.append({k: d[k] for k in range(c) if d[k]})
        return kernel_basis(linear_system(c, eqs, self.field))

    def _form_ok(self, lam, symmetric) -> bool:
        G = self.gram(lam)
        if symmetric and G != G.T:
            return False
        return rank(G) == self.dim

    def gram(self, lam=None) -> Matrix:
        lam = self.frobenius_form if lam is None else lam
        F = self.field
        c = self.dim
        rows = [[F.norm(sum(lam[k] * self.mult[u][v][k] for k in range(c))) for v in range(c)]
                for u in range(c)]
        return Matrix(rows, c, F, True)

    @cached_property
    def gram_inverse(self) -> Matrix:
        return inverse(self.gram())

    def evaluate_form(self, a) -> object:
        lam = self.frobenius_form
        return self.field.norm(sum(x * y for x, y in zip(lam, a)))

    @cached_property
    def opposite(self) -> FrobeniusCore:
        c = self.dim
        mult = tuple(tuple(self.mult[v][u] for v in range(c)) for u in range(c))
        return FrobeniusCore(self.name + "^op", c, mult, self.unit, self.generators,
                             self.field, self.form)

    def is_single_generator(self) -> bool:
        return len(self.generators) == 1

    def to_json(self) -> dict:
        F = self.field
        return {"name": self.name,
                "basis": [f"e{u}" for u in range(self.dim)],
                "structure_constants": [[[F.to_json(x) for x in self.mult[u][v]]
                                         for v in range(self.dim)] for u in range(self.dim)],
                "unit": [F.to_json(x) for x in self.unit],
                "generators": [[F.to_json(x) for x in g] for g in self.generators]}

    @classmethod
    def from_json(cls, obj: dict, field=QQ) -> FrobeniusCore:
        if "truncated_poly" in obj:
            return truncated_poly(int(obj["truncated_poly"]), field)
        sc = obj["structure_constants"]
        return cls(obj.get("name", "core"), len(sc), sc, obj["unit"], obj["generators"], field)

    def same_as(self, other) -> bool:
        return (self.dim == other.dim and self.mult == other.mult
                and self.generators == other.generators and self.field == other.field)


_TRUNC_CACHE: dict = {}


def truncated_poly(c: int, field=QQ) -> FrobeniusCore:
    """``k[eps]/(eps^c)`` with basis ``1, eps, ..., eps^(c-1)``."""
    if c < 1:
        raise CoreError("truncated polynomial ring needs c >= 1")
    key = (c, field)
    if key not in _TRUNC_CACHE:
        mult = [[[1 if k == a + b else 0 for k in range(c)] for b in range(c)] for a in range(c)]
        gens = [] if c == 1 else [[1 if k == 1 else 0 for k in range(c)]]
        form = [1 if k == c - 1 else 0 for k in range(c)]
        name = "k" if c == 1 else f"k[e]/(e^{c})"
        _TRUNC_CACHE[key] = FrobeniusCore(name, c, mult, [1] + [0] * (c - 1), gens, field, form)
    return _TRUNC_CACHE[key]


def product_core(field=QQ) -> FrobeniusCore:
    """``k x k``: Frobenius and commutative, but not local."""
    mult = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    return FrobeniusCore("k x k", 2, mult, [1, 1], [[1, 0]], field)


def exterior_core(field=QQ) -> FrobeniusCore:
    """``k[x, y]/(x^2, y^2)`` with basis ``1, x, y, xy`` (commutative, two generators)."""
    table = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 2): 3}
    mult = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for (a, b), k in table.items():
        mult[a][b][k] = 1
        mult[b][a][k] = 1
    return FrobeniusCore("k[x,y]/(x^2,y^2)", 4, mult, [1, 0, 0, 0],
                         [[0, 1, 0, 0], [0, 0, 1, 0]], field, [0, 0, 0, 1])


def check_frobenius(core: FrobeniusCore) -> dict:
    """Solve for associative bilinear forms ``B(xy, z) = B(x, yz)`` and test nondegeneracy.

    Returns a certificate dict; raises ``NotFrobenius`` when no nondegenerate
    solution exists.
    """
    c = core.dim
    F = core.field
    nvar = c * c
    eqs = []
    for x in range(c):
        for y in range(c):
            xy = core.mult[x][y]
            for z in range(c):
                yz = core.mult[y][z]
                eq: dict = {}
                for k in range(c):
                    if xy[k]:
                        eq[k * c + z] = eq.get(k * c + z, 0) + xy[k]
                    if yz[k]:
                        eq[x * c + k] = eq.get(x * c + k, 0) - yz[k]
                eqs.append(eq)
    system = linear_system(nvar, eqs, F)
    sols = kernel_basis(system)
    rng = random.Random(7)
    trials = list(sols) + [tuple(F.norm(sum(rng.randint(-9, 9) * s[k] for s in sols))
                                 for k in range(nvar)) for _ in range(16)]
    for B in trials:
        G = Matrix([list(B[r * c:(r + 1) * c]) for r in range(c)], c, F)
        if rank(G) == c:
            return {"ok": True, "solution_dim": len(sols), "form": G.to_lists()}
    best = max((rank(Matrix([list(B[r * c:(r + 1) * c]) for r in range(c)], c, F))
                for B in trials), default=0)
    raise NotFrobenius(f"{core.name} is not Frobenius",
                       certificate={"equations": system.nrows, "unknowns": nvar,
                                    "solution_dim": len(sols), "rank_defect": c - best})


@dataclass(frozen=True, eq=False)
class CoreModule:
    """A left module over ``core``: one action matrix per generator."""

    core: FrobeniusCore
    dim: int
    action: tuple = field(default=())

    def __post_init__(self):
        act = tuple(self.action)
        if not act and self.core.generators:
            act = tuple(Matrix.zeros(self.dim, self.dim, self.core.field)
                        for _ in self.core.generators)
        if len(act) != len(self.core.generators):
            raise CoreError("need one action matrix per generator")
        for m in act:
            if m.shape != (self.dim, self.dim):
                raise CoreError(f"action matrix has shape {m.shape}, expected {self.dim}")
        object.__setattr__(self, "action", act)

    @property
    def field(self):
        return self.core.field

    @cached_property
    def _word_actions(self) -> list[Matrix]:
        words, _ = self.core.word_basis
        out = []
        ident = Matrix.identity(self.dim, self.field)
        cache = {(): ident}
        for w in words:
            if w not in cache:
                cache[w] = self.action[w[0]] @ cache[w[1:]]
            out.append(cache[w])
        return out

    @cached_property
    def basis_action(self) -> list[Matrix]:
        """Action matrix of every k-basis element of the core."""
        return [self.act(self.core.basis_vector(u)) for u in range(self.core.dim)]

    @cached_property
    def _act_memo(self) -> dict:
        return {}

    def act(self, a) -> Matrix:
        a = tuple(a)
        hit = self._act_memo.get(a)
        if hit is not None:
            return hit
        coords = self.core.word_coordinates(a)
        out = Matrix.zeros(self.dim, self.dim, self.field)
        for x, m in zip(coords, self._word_actions):
            if x:
                out = out + m.scale(x)
        self._act_memo[a] = out
        return out

    def validate(self) -> None:
        """Check that the generator actions satisfy every relation of the core."""
        core = self.core
        ba = self.basis_action
        if ba[0].shape != (self.dim, self.dim):
            raise CoreError("bad action shape")
        if self.act(core.unit) != Matrix.identity(self.dim, self.field):
            raise CoreError("unit does not act as identity")
        for u in range(core.dim):
            for v in range(core.dim):
                lhs = ba[u] @ ba[v]
                rhs = self.act(core.mult[u][v])
                if lhs != rhs:
                    raise CoreError(f"relation e{u} e{v} violated by the module")
        for gi, g in enumerate(core.generators):
            if self.act(g) != self.action[gi]:
                raise CoreError(f"generator {gi} action inconsistent with words")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except CoreError:
            return False
        return True

    def direct_sum(self, other: CoreModule) -> CoreModule:
        from .exactla import block_diag
        act = tuple(block_diag([a, b], field=self.field) for a, b in zip(self.action, other.action))
        return CoreModule(self.core, self.dim + other.dim, act)

    def power(self, r: int) -> CoreModule:
        from .exactla import repeat_diag
        return CoreModule(self.core, self.dim * r, tuple(repeat_diag(a, r) for a in self.action))

    def restrict(self, U: Matrix, pi: Matrix | None = None) -> CoreModule:
        """Submodule on the column span of ``U`` (assumed invariant and independent)."""
        from .exactla import solve_matrix
        act = []
        for a in self.action:
            X = solve_matrix(U, a @ U)
            if X is None:
                raise CoreError("subspace is not a submodule")
            act.append(X)
        return CoreModule(self.core, U.ncols, tuple(act))

    def quotient(self, pi: Matrix, sigma: Matrix) -> CoreModule:
        """Quotient module through a projection ``pi`` with section ``sigma``."""
        act = tuple(pi @ a @ sigma for a in self.action)
        return CoreModule(self.core, pi.nrows, act)

    def to_json(self) -> dict:
        return {"dim": self.dim, "action": [a.to_lists() for a in self.action]}


def regular_module(core: FrobeniusCore) -> CoreModule:
    return CoreModule(core, core.dim, tuple(core.left_matrix(g) for g in core.generators))


def free_module(core: FrobeniusCore, r: int) -> CoreModule:
    return regular_module(core).power(r)


def zero_module(core: FrobeniusCore) -> CoreModule:
    return CoreModule(core, 0)


def trivial_module(core: FrobeniusCore) -> CoreModule:
    """The simple module ``k`` with every generator acting by zero."""
    return CoreModule(core, 1)


def top_complement(M: CoreModule) -> Matrix:
    """Standard basis vectors spanning a complement of ``rad(A) M``."""
    from .exactla import column_space, complement_basis
    if M.dim == 0:
        return Matrix.zeros(0, 0, M.field)
    if M.action:
        radM = column_space(hstack(list(M.action)))
    else:
        radM = Matrix.zeros(M.dim, 0, M.field)
    return complement_basis(radM)


def generated_map(M: CoreModule, gens: Matrix) -> Matrix:
    """Matrix of ``A^t -> M`` sending the ``s``-th basis vector of copy ``t`` to ``e_s m_t``."""
    cols = []
    for t in range(gens.ncols):
        m = gens.col(t)
        for u in range(M.core.dim):
            cols.append(M.basis_action[u].apply(m))
    return Matrix.from_columns(cols, M.dim, M.field)


def free_basis(M: CoreModule) -> Matrix | None:
    """Columns forming a free basis of ``M`` over its local core, or ``None``.

    Lifts a basis of the top ``M / rad(A) M``; by Nakayama these generate, and
    ``M`` is free exactly when the induced map ``A^t -> M`` is bijective.
    """
    T = top_complement(M)
    if T.ncols * M.core.dim != M.dim:
        return None
    if M.dim == 0:
        return T
    if rank(generated_map(M, T)) != M.dim:
        return None
    return T


def free_rank(core: FrobeniusCore, M: CoreModule):
    """Free rank of ``M`` over a single-generator core, or a ``NotFree`` witness."""
    if M.dim == 0:
        return 0
    c = core.dim
    if c == 1:
        return M.dim
    if not core.is_single_generator():
        raise UnsupportedCore("unsupported core: free_rank needs a single nilpotent generator")
    profile = nilpotent_block_profile(M.action[0])
    if all(b == c for b in profile):
        return len(profile)
    return NotFree(profile)


def free_rank_any(M: CoreModule):
    """Free rank for any local core: block profile when possible, top lifting otherwise."""
    if M.core.is_single_generator() or M.core.dim == 1:
        return free_rank(M.core, M)
    T = free_basis(M)
    if T is None:
        return NotFree((), reason="top lift does not give a free basis")
    return T.ncols


def intertwiner_equations(pairs, m: int, n: int, field=QQ, offset: int = 0):
    """Sparse equations for ``F A = B F`` with ``F`` an ``n x m`` unknown.

    ``pairs`` lists ``(A, B)`` with ``A`` ``m x m`` and ``B`` ``n x n``; the
    entry ``F[r][k]`` is variable ``offset + r*m + k``.
    """
    eqs = []
    for A, B in pairs:
        Acols = [[(k, x) for k, x in enumerate(A.col(c)) if x] for c in range(m)]
        Brows = [[(k, x) for k, x in enumerate(B.rows[r]) if x] for r in range(n)]
        for r in range(n):
            for c in range(m):
                eq: dict = {}
                for k, x in Acols[c]:
                    v = offset + r * m + k
                    eq[v] = eq.get(v, 0) + x
                for k, x in Brows[r]:
                    v = offset + k * m + c
                    eq[v] = eq.get(v, 0) - x
                eq = {v: x for v, x in eq.items() if x}
                if eq:
                    eqs.append(eq)
    return eqs


def vec_to_matrix(v, nrows, ncols, field=QQ, offset=0) -> Matrix:
    return Matrix([list(v[offset + r * ncols: offset + (r + 1) * ncols]) for r in range(nrows)],
                  ncols, field, True)


def module_hom(core: FrobeniusCore, M: CoreModule, N: CoreModule) -> list[Matrix]:
    """Basis of ``Hom_A(M, N)`` as ``N.dim x M.dim`` matrices."""
    m, n = M.dim, N.dim
    F = core.field
    if m == 0 or n == 0:
        return []
    eqs = intertwiner_equations(list(zip(M.action, N.action)), m, n, F)
    sols = kernel_basis(linear_system(m * n, eqs, F))
    return [vec_to_matrix(s, n, m, F) for s in sols]


def is_module_map(f: Matrix, M: CoreModule, N: CoreModule) -> bool:
    return all(f @ a == b @ f for a, b in zip(M.action, N.action))


def modules_isomorphic(M: CoreModule, N: CoreModule, seed: int = 0) -> bool:
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    basis = module_hom(M.core, M, N)
    rng = random.Random(seed)
    for _ in range(8):
        f = Matrix.zeros(N.dim, M.dim, M.field)
        for b in basis:
            f = f + b.scale(rng.randint(-50, 50) if M.field == QQ else M.field.random(rng))
        if rank(f) == M.dim:
            return True
    return False
