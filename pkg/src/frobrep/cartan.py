"""Symmetrizable Cartan matrices, their quadratic forms and type classification.

Vertices are 0-based inside the library.  An orientation is a set of pairs
``(i, j)`` with ``i < j`` meaning arrows ``i <- j`` (vertex ``0`` is a sink).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exactla import Matrix, determinant

DYNKIN = "Dynkin"
EUCLIDEAN = "Euclidean"
INDEFINITE = "Indefinite"


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    rule: str
    where: tuple
    detail: str

    def __str__(self):
        return f"{self.rule} at {self.where}: {self.detail}"


def _as_matrix(C) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in C)


def default_orientation(C) -> frozenset:
    n = len(C)
    return frozenset((i, j) for i in range(n) for j in range(i + 1, n) if C[i][j] < 0)


def validate(C, D, orientation: Iterable | None = None) -> Violation | None:
    """First violated axiom of a symmetrizable Cartan triple, or ``None``."""
    n = len(C)
    if any(len(row) != n for row in C):
        return Violation("shape", (), "C is not square")
    if len(D) != n:
        return Violation("shape", (), f"symmetrizer has {len(D)} entries, expected {n}")
    for i in range(n):
        if C[i][i] != 2:
            return Violation("diagonal", (i,), f"c_ii = {C[i][i]}")
        if D[i] <= 0:
            return Violation("symmetrizer", (i,), f"c_i = {D[i]} is not positive")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if C[i][j] > 0:
                return Violation("sign", (i, j), f"c_ij = {C[i][j]} > 0")
            if (C[i][j] == 0) != (C[j][i] == 0):
                return Violation("zero-pattern", (i, j), "c_ij = 0 but c_ji != 0")
            if D[i] * C[i][j] != D[j] * C[j][i]:
                return Violation("symmetrizer", (i, j),
                                 f"c_i c_ij = {D[i] * C[i][j]} != c_j c_ji = {D[j] * C[j][i]}")
    if orientation is not None:
        omega = set(map(tuple, orientation))
        for i, j in omega:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                return Violation("orientation", (i, j), "pair out of range")
            if (j, i) in omega:
                return Violation("orientation", (i, j), "both directions present")
        for i in range(n):
            for j in range(i + 1, n):
                present = (i, j) in omega or (j, i) in omega
                if present != (C[i][j] < 0):
                    return Violation("orientation", (i, j),
                                     "orientation must contain an edge exactly where c_ij < 0")
        if topological_order(n, omega) is None:
            return Violation("orientation", (), "orientation has an oriented cycle")
    return None


def check(C, D, orientation=None) -> None:
    v = validate(C, D, orientation)
    if v is not None:
        raise CartanError(f"invalid Cartan data: {v}")


def topological_order(n: int, omega: Iterable) -> list[int] | None:
    """Vertex order with ``i`` before ``j`` whenever ``(i, j)`` is in ``omega``.

    Ties are broken by the smallest index, so an already ordered input is kept.
    """
    omega = set(map(tuple, omega))
    indeg = [0] * n
    for _, j in omega:
        indeg[j] += 1
    order = []
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a, b in sorted(omega):
            if a == v:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
                    ready.sort()
    return order if len(order) == n else None


def reorder(C, D, orientation) -> tuple[tuple, tuple, frozenset, list[int]]:
    """Relabel so that every oriented pair is increasing.

    Returns the new (C, D, orientation) and ``perm`` with new vertex ``k`` equal
    to old vertex ``perm[k]``.
    """
    n = len(C)
    perm = topological_order(n, orientation)
    if perm is None:
        raise CartanError("orientation has an oriented cycle")
    pos = {v: k for k, v in enumerate(perm)}
    C2 = tuple(tuple(C[perm[a]][perm[b]] for b in range(n)) for a in range(n))
    D2 = tuple(D[perm[a]] for a in range(n))
    om = frozenset((pos[i], pos[j]) for i, j in orientation)
    return C2, D2, om, perm


def quadratic_form(C, D, x: Sequence[int]) -> int:
    n = len(C)
    q = sum(D[i] * x[i] * x[i] for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            q -= D[i] * abs(C[i][j]) * x[i] * x[j]
    return q


def gram_matrix(C, D) -> Matrix:
    """Symmetric matrix ``M`` with ``x^T M x = 2 q_C(x)``."""
    n = len(C)
    rows = [[2 * D[i] if i == j else -D[i] * abs(C[i][j]) for j in range(n)] for i in range(n)]
    return Matrix(rows)


def gram_minors(C, D) -> list:
    M = gram_matrix(C, D)
    return [determinant(M.take_rows(range(k)).take_cols(range(k))) for k in range(1, len(C) + 1)]


def classify(C, D) -> str:
    """Dynkin / Euclidean / Indefinite by exact symmetric elimination."""
    M = [[Fraction(x) for x in row] for row in gram_matrix(C, D).rows]
    n = len(M)
    degenerate = False
    for k in range(n):
        p = M[k][k]
        if p < 0:
            return INDEFINITE
        if p == 0:
            if any(M[k][j] for j in range(k + 1, n)):
                return INDEFINITE
            degenerate = True
            continue
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f:
                for j in range(k + 1, n):
                    M[i][j] -= f * M[k][j]
    return EUCLIDEAN if degenerate else DYNKIN


@dataclass(frozen=True)
class Arrow:
    head: int  # i
    tail: int  # j, arrow i <- j
    valuation: tuple[int, int]


@dataclass(frozen=True)
class ValuedQuiver:
    n: int
    arrows: tuple[Arrow, ...]

    def to_json(self):
        return {"n": self.n,
                "arrows": [{"from": a.tail + 1, "to": a.head + 1, "valuation": list(a.valuation)}
                           for a in self.arrows]}


def valued_quiver(C, D=None, orientation=None) -> ValuedQuiver:
    n = len(C)
    omega = default_orientation(C) if orientation is None else set(map(tuple, orientation))
    arrows = []
    for i in range(n):
        for j in range(n):
            if (i, j) in omega:
                arrows.append(Arrow(i, j, (-C[j][i], -C[i][j])))
    return ValuedQuiver(n, tuple(arrows))


def components(C) -> list[list[int]]:
    n = len(C)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if w != v and C[v][w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(C) -> bool:
    return len(components(C)) <= 1


def _component_shape(C, verts) -> str | None:
    n = len(verts)
    adj = {v: [w for w in verts if w != v and C[v][w]] for v in verts}
    edges = [(v, w) for v in verts for w in verts if v < w and C[v][w]]
    if len(edges) != n - 1:
        return None  # not a tree (connected by construction)
    prods = {(v, w): C[v][w] * C[w][v] for v, w in edges}
    if any(p > 3 for p in prods.values()):
        return None
    heavy = [e for e, p in prods.items() if p > 1]
    degs = sorted(len(adj[v]) for v in verts)
    is_path = n == 1 or degs[-1] <= 2
    if not heavy:
        if is_path:
            return f"A{n}"
        if degs[-1] > 3 or degs.count(3) > 1:
            return None
        center = next(v for v in verts if len(adj[v]) == 3)
        legs = []
        for start in adj[center]:
            length, prev, cur = 1, center, start
            while len(adj[cur]) == 2:
                prev, cur = cur, next(w for w in adj[cur] if w != prev)
                length += 1
            legs.append(length)
        legs.sort()
        if legs[0] == 1 and legs[1] == 1:
            return f"D{n}"
        if legs[0] == 1 and legs[1] == 2 and legs[2] in (2, 3, 4):
            return f"E{n}"
        return None
    if len(heavy) > 1 or not is_path:
        return None
    (v, w), = heavy
    if prods[(v, w)] == 3:
        return "G2" if n == 2 else None
    ends = [u for u in verts if len(adj[u]) <= 1]
    if n <= 2 or v in ends or w in ends:
        return f"B{n}" if n != 2 else "B2"
    if n == 4:
        return "F4"
    return None


def dynkin_shape(C) -> list[str] | None:
    """Dynkin labels of the connected components, or ``None`` if some component is not Dynkin.

    Recognition is purely graph-theoretic on the valued graph and is used as
    an independent check on ``classify``.  Types B and C share a label.
    """
    shapes = []
    for comp in components(C):
        s = _component_shape(C, comp)
        if s is None:
            return None
        shapes.append(s)
    return shapes


@dataclass(frozen=True)
class GlsQuantities:
    g: int
    f_ij: int
    f_ji: int
    k: int


def gls_quantities(C, D, i: int, j: int) -> GlsQuantities:
    cij, cji = C[i][j], C[j][i]
    if cij >= 0:
        raise CartanError(f"no edge between {i} and {j}")
    g = abs(gcd(cij, cji))
    q = GlsQuantities(g, abs(cij) // g, abs(cji) // g, gcd(D[i], D[j]))
    if D[j] % q.f_ij or D[i] % q.f_ji:
        raise CartanError(f"invalid Cartan data: f_ij must divide c_j on edge ({i}, {j})")
    return q


def quadratic_form_pathalg(n: int, arrows: Iterable[tuple[int, int]], x) -> int:
    """``sum x_i^2 - sum_arrows x_s x_t`` for a quiver given by (source, target) pairs."""
    return sum(v * v for v in x[:n]) - sum(x[s] * x[t] for s, t in arrows)


def quadratic_form_genpath(n: int, arrows: Iterable[tuple[int, int]], dims, x) -> int:
    """Quadratic form of a generalized path algebra with core dimensions ``dims``."""
    return (sum(dims[i] * x[i] * x[i] for i in range(n))
            - sum(dims[s] * dims[t] * x[s] * x[t] for s, t in arrows))


def cartan_of_quiver(n: int, arrows: Iterable[tuple[int, int]], dims=None):
    """(C, D, orientation) of a generalized path algebra ``k(Q, A)``.

    Arrows are (source, target) pairs and must go from larger to smaller index.
    """
    dims = dims or [1] * n
    count = {}
    for s, t in arrows:
        if not t < s:
            raise CartanError("arrows must point from a larger to a smaller vertex index")
        count[(t, s)] = count.get((t, s), 0) + 1
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), m in count.items():
        C[i][j] = -m * dims[j]
        C[j][i] = -m * dims[i]
    return _as_matrix(C), tuple(dims), frozenset(count)


@dataclass(frozen=True)
class CartanDatum:
    """A validated symmetrizable Cartan triple (C, D, orientation)."""

    C: tuple
    D: tuple
    orientation: frozenset = field(default=None)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "C", _as_matrix(self.C))
        object.__setattr__(self, "D", tuple(int(d) for d in self.D))
        om = self.orientation
        om = default_orientation(self.C) if om is None else frozenset(map(tuple, om))
        object.__setattr__(self, "orientation", om)
        check(self.C, self.D, om)

    @property
    def n(self) -> int:
        return len(self.C)

    def is_ordered(self) -> bool:
        return all(i < j for i, j in self.orientation)

    def ordered(self) -> CartanDatum:
        C, D, om, _ = reorder(self.C, self.D, self.orientation)
        return CartanDatum(C, D, om, self.name)

    def q(self, x) -> int:
        return quadratic_form(self.C, self.D, x)

    def classify(self) -> str:
        return classify(self.C, self.D)

    def to_json(self) -> dict:
        return {"n": self.n, "C": [list(r) for r in self.C], "D": list(self.D),
                "orientation": sorted([i + 1, j + 1] for i, j in self.orientation),
                "name": self.name}

    @classmethod
    def from_json(cls, obj: dict) -> CartanDatum:
        C = obj["C"]
        n = obj.get("n", len(C))
        if len(C) != n:
            raise CartanError("n does not match C")
        D = obj.get("D", [1] * n)
        om = obj.get("orientation")
        if om is not None:
            om = [(int(a) - 1, int(b) - 1) for a, b in om]
        return cls(C, D, om, obj.get("name", ""))


# Standard examples, oriented so that vertex 0 is a sink.
NAMED = {
    "A1": ([[2]], [1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    "A4": ([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]], [1, 1, 1, 1]),
    "B2": ([[2, -1], [-2, 2]], [2, 1]),
    "B3": ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], [2, 2, 1]),
    "C3": ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], [1, 1, 2]),
    "G2": ([[2, -1], [-3, 2]], [3, 1]),
    "D4": ([[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -1, 2]], [1, 1, 1, 1]),
    "F4": ([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]], [2, 2, 1, 1]),
    "Kronecker": ([[2, -2], [-2, 2]], [1, 1]),
}


def named(name: str, scale: int = 1) -> CartanDatum:
    """A standard Cartan datum; ``scale`` multiplies the symmetrizer."""
    C, D = NAMED[name]
    return CartanDatum(C, [d * scale for d in D], None, name)
