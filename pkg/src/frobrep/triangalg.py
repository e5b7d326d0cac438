"""Triangular matrix algebras over Frobenius cores, stored by arrow data only.

An algebra on positions ``0..n-1`` holds a core per position and a bimodule
``B[i, j]`` (``A_i``-``A_j``) for each ``i < j`` that carries arrows ``i <- j``.
``labels[p]`` is the vertex of the starting algebra sitting at position ``p``;
rotation moves position 0 to the end and dualizes its arrow bimodules.  The
rotations of an algebra form a ring of length ``n``: rotating ``n`` times
returns the very same object.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .bimod import Bimodule, arrow_bimodule, dual_basis_failures, free_core_bimodule, gls_bimodule
from .cartan import CartanDatum, CartanError, components, topological_order, validate
from .exactla import QQ
from .frobcore import FrobeniusCore, NotFree, free_rank_any, truncated_poly


class AlgebraError(ValueError):
    pass


class AlgebraMismatch(AlgebraError):
    pass


@dataclass(eq=False)
class TriangularAlgebra:
    cores: tuple
    bimods: dict  # (i, j) -> Bimodule with i < j
    labels: tuple = None
    name: str = ""
    spec: dict | None = None  # how the starting algebra was built, for serialization
    field: object = QQ
    base: TriangularAlgebra | None = None
    shift: int = 0

    def __post_init__(self):
        n = len(self.cores)
        if self.labels is None:
            self.labels = tuple(range(n))
        if self.base is None:
            self.base = self
        for (i, j), B in self.bimods.items():
            if not (0 <= i < j < n):
                raise AlgebraError(f"bimodule at ({i}, {j}) is not above the diagonal")
            if B.left_core is not self.cores[i] or B.right_core is not self.cores[j]:
                if not (B.left_core.same_as(self.cores[i]) and B.right_core.same_as(self.cores[j])):
                    raise AlgebraError(f"bimodule at ({i}, {j}) has the wrong cores")
        self._ring = self.base.__dict__.setdefault("_ring", {})
        self._ring.setdefault(self.shift, self)

    @property
    def n(self) -> int:
        return len(self.cores)

    def dims(self) -> tuple[int, ...]:
        return tuple(A.dim for A in self.cores)

    def bimod(self, i, j) -> Bimodule | None:
        return self.bimods.get((i, j))

    def arrows_into(self, i) -> list[int]:
        """Positions ``j > i`` with a bimodule ``B[i, j]``."""
        return [j for j in range(i + 1, self.n) if (i, j) in self.bimods]

    def arrows_out(self, j) -> list[int]:
        return [i for i in range(j) if (i, j) in self.bimods]

    def position(self, label) -> int:
        return self.labels.index(label)

    # validation

    def validate(self) -> None:
        for A in self.cores:
            if not A.is_local():
                raise AlgebraError(f"core {A.name} is not local")
            _ = A.frobenius_form
        for key, B in sorted(self.bimods.items()):
            B.validate()
            bad = dual_basis_failures(B)
            if bad:
                raise AlgebraError(f"dual basis identity fails for B{key} at {bad[:3]}")
        if not self.is_connected():
            raise AlgebraError("algebra is not connected")
        C, D = self.cartan()
        v = validate(C, D)
        if v is not None:
            raise AlgebraError(f"Cartan data of the algebra is invalid: {v}")

    def is_connected(self) -> bool:
        n = self.n
        C = [[2 if i == j else (-1 if (min(i, j), max(i, j)) in self.bimods else 0)
              for j in range(n)] for i in range(n)]
        return len(components(C)) <= 1

    @cached_property
    def _cartan(self):
        n = self.n
        C = [[0] * n for _ in range(n)]
        for i in range(n):
            C[i][i] = 2
        for (i, j), B in self.bimods.items():
            lr = free_rank_any(B.left_module)
            rr = free_rank_any(B.right_module)
            if isinstance(lr, NotFree) or isinstance(rr, NotFree):
                raise AlgebraError(f"rank extraction failure on B[{i}, {j}]")
            if lr != B.left_rank or rr != B.right_rank:
                raise AlgebraError(f"recorded free bases of B[{i}, {j}] have the wrong size")
            C[i][j] = -lr
            C[j][i] = -rr
        return tuple(map(tuple, C)), self.dims()

    def cartan(self):
        """(C, D) in position order."""
        return self._cartan

    def cartan_labels(self):
        """(C, D) indexed by vertex labels, i.e. in the starting algebra's order."""
        C, D = self._cartan
        n = self.n
        pos = [self.position(v) for v in range(n)]
        C2 = tuple(tuple(C[pos[a]][pos[b]] for b in range(n)) for a in range(n))
        D2 = tuple(D[pos[a]] for a in range(n))
        return C2, D2

    # matrix picture

    def entry_dims(self) -> list[list[int]]:
        """``dim e_k L e_l``: cores on the diagonal, tensor chains above it."""
        n = self.n
        d = [[0] * n for _ in range(n)]
        for l in range(n):
            d[l][l] = self.cores[l].dim
            for k in range(l - 1, -1, -1):
                d[k][l] = sum(self.bimods[(k, m)].right_rank * d[m][l]
                              for m in range(k + 1, l + 1) if (k, m) in self.bimods)
        return d

    def dim(self) -> int:
        return sum(map(sum, self.entry_dims()))

    # rotation

    @cached_property
    def rotated(self) -> TriangularAlgebra:
        n = self.n
        nxt = (self.shift + 1) % n
        if nxt in self._ring and nxt != 0:
            return self._ring[nxt]
        cores = self.cores[1:] + self.cores[:1]
        bimods = {}
        for (i, j), B in self.bimods.items():
            if i == 0:
                bimods[(j - 1, n - 1)] = B.dual
            else:
                bimods[(i - 1, j - 1)] = B
        if nxt == 0:
            # closing the ring: the data must agree with the starting algebra
            base = self.base
            for key, B in bimods.items():
                if base.bimods.get(key) is not B:
                    raise AlgebraError("rotation ring failed to close")
            return base
        out = TriangularAlgebra(cores, bimods, self.labels[1:] + self.labels[:1],
                                self.name, None, self.field, self.base, nxt)
        return out

    def rotation(self, k: int) -> TriangularAlgebra:
        """The algebra rotated ``k`` more times (``k`` may be negative)."""
        target = (self.shift + k) % self.n
        alg = self
        while alg.shift != target:
            alg = alg.rotated
        return alg

    @property
    def unrotated(self) -> TriangularAlgebra:
        """The algebra whose rotation is this one."""
        return self.rotation(-1)

    # opposite

    @cached_property
    def opposite(self) -> TriangularAlgebra:
        """``L^op``: positions reversed, cores opposite, bimodules with sides swapped."""
        n = self.n
        cores = tuple(A.opposite for A in reversed(self.cores))
        bimods = {}
        for (i, j), B in self.bimods.items():
            bimods[(n - 1 - j, n - 1 - i)] = Bimodule(
                B.right_core.opposite, B.left_core.opposite, B.dim,
                B.right_action, B.left_action, B.right_basis, B.left_basis, f"{B.name}^op")
        op = TriangularAlgebra(cores, bimods, tuple(reversed(self.labels)),
                               self.name + "^op", None, self.field)
        return op

    def __repr__(self):
        return f"TriangularAlgebra({self.name or 'L'}, n={self.n}, shift={self.shift})"


# --- builders -----------------------------------------------------------------


def build_gls(datum: CartanDatum, field=QQ, name: str | None = None) -> TriangularAlgebra:
    """Algebra with truncated polynomial cores ``k[e]/(e^{c_i})`` and GLS arrow bimodules."""
    if not datum.is_ordered():
        raise CartanError("vertices must be ordered with (i, j) in the orientation only for i < j")
    C, D = datum.C, datum.D
    cores = tuple(truncated_poly(c, field) for c in D)
    bimods = {}
    for i, j in sorted(datum.orientation):
        bimods[(i, j)] = gls_bimodule(D[i], D[j], C[i][j], C[j][i], field, name=f"B{i + 1}{j + 1}")
    alg = TriangularAlgebra(cores, bimods, None, name or datum.name or "gls",
                            {"family": "gls", **datum.to_json()}, field)
    if not alg.is_connected():
        raise AlgebraError("algebra is not connected")
    return alg


def _arrow_counts(n, arrows):
    counts = {}
    for s, t in arrows:
        if not (0 <= s < n and 0 <= t < n) or s == t:
            raise AlgebraError(f"bad arrow {s}->{t}")
        counts[(t, s)] = counts.get((t, s), 0) + 1
    if topological_order(n, counts) is None:
        raise AlgebraError("quiver has an oriented cycle")
    if any(not t < s for t, s in counts):
        raise AlgebraError("arrows must go from a larger to a smaller vertex index (sinks first)")
    return counts


def build_path_algebra_over_core(n: int, arrows, A: FrobeniusCore,
                                 name: str = "kQ(x)A") -> TriangularAlgebra:
    """All cores ``A``, ``B[t, s] = A^m`` for ``m`` arrows ``s -> t``."""
    counts = _arrow_counts(n, arrows)
    bimods = {(t, s): free_core_bimodule(A, m, name=f"B{t + 1}{s + 1}")
              for (t, s), m in sorted(counts.items())}
    spec = {"family": "path_over_core", "n": n,
            "arrows": [[s + 1, t + 1] for s, t in arrows], "core": _core_spec(A)}
    alg = TriangularAlgebra((A,) * n, bimods, None, name, spec, A.field)
    if not alg.is_connected():
        raise AlgebraError("algebra is not connected")
    return alg


def build_generalized_path_algebra(n: int, arrows, cores, name: str = "k(Q,A)") -> TriangularAlgebra:
    """``B[t, s] = A_t Q_ts A_s``: the free bimodule on the arrows ``s -> t``."""
    cores = tuple(cores)
    if len(cores) != n:
        raise AlgebraError("need one core per vertex")
    for A in cores:
        if not A.is_local():
            raise AlgebraError(f"unsupported core {A.name}")
    counts = _arrow_counts(n, arrows)
    bimods = {(t, s): arrow_bimodule(cores[t], cores[s], m, name=f"B{t + 1}{s + 1}")
              for (t, s), m in sorted(counts.items())}
    spec = {"family": "genpath", "n": n, "arrows": [[s + 1, t + 1] for s, t in arrows],
            "cores": [_core_spec(A) for A in cores]}
    alg = TriangularAlgebra(cores, bimods, None, name, spec, cores[0].field)
    if not alg.is_connected():
        raise AlgebraError("algebra is not connected")
    return alg


def _core_spec(A: FrobeniusCore) -> dict:
    if A.is_single_generator() or A.dim == 1:
        # truncated polynomial rings are recognized by their table
        T = truncated_poly(A.dim, A.field)
        if T.same_as(A):
            return {"truncated_poly": A.dim}
    return A.to_json()


def valued_quiver_of_genpath(n, arrows, dims):
    """Valued quiver attached to ``k(Q, A)`` from arrow counts: ``(d_ji, d_ij)`` on ``i <- j``."""
    counts = {}
    for s, t in arrows:
        counts[(t, s)] = counts.get((t, s), 0) + 1
    return {(i, j): (m * dims[i], m * dims[j]) for (i, j), m in counts.items()}


def path_count_dims(n, arrows) -> list[list[int]]:
    """Number of paths from ``l`` to ``k`` in a quiver (paths of length 0 included)."""
    out = {}
    for s, t in arrows:
        out.setdefault(s, []).append(t)
    d = [[0] * n for _ in range(n)]

    def walk(start, v):
        d[v][start] += 1
        for w in out.get(v, []):
            walk(start, w)

    for l in range(n):
        walk(l, l)
    return d
