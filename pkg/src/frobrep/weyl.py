"""Simple reflections, Coxeter transformations and positive real roots.

Rank vectors are integer tuples; vertex indices are 0-based.  ``c+`` applies
``s_0`` first and ``s_{n-1}`` last; ``c-`` is its inverse.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .cartan import DYNKIN, classify

RankVector = tuple


class NotDynkin(ValueError):
    pass


class NotPositiveRoot(ValueError):
    pass


def unit(n: int, i: int) -> RankVector:
    return tuple(1 if k == i else 0 for k in range(n))


def simple_reflection(C, i: int, x: Sequence[int]) -> RankVector:
    n = len(C)
    y = list(x)
    y[i] = -x[i] - sum(C[i][j] * x[j] for j in range(n) if j != i)
    return tuple(y)


def apply_word(C, word: Sequence[int], x) -> RankVector:
    """Apply reflections in the order listed (first entry acts first)."""
    for i in word:
        x = simple_reflection(C, i, x)
    return tuple(x)


def coxeter_plus(C, x) -> RankVector:
    return apply_word(C, range(len(C)), x)


def coxeter_minus(C, x) -> RankVector:
    return apply_word(C, reversed(range(len(C))), x)


def coxeter(C, k: int, x) -> RankVector:
    """``c^k x`` with ``c^k = (c+)^k`` for ``k > 0`` and ``(c-)^{-k}`` for ``k < 0``."""
    x = tuple(x)
    step = coxeter_plus if k > 0 else coxeter_minus
    for _ in range(abs(k)):
        x = step(C, x)
    return x


def is_positive(x) -> bool:
    return all(v >= 0 for v in x) and any(v > 0 for v in x)


def beta_gamma(C) -> tuple[list[RankVector], list[RankVector]]:
    n = len(C)
    betas = [apply_word(C, reversed(range(k)), unit(n, k)) for k in range(n)]
    gammas = [apply_word(C, range(k + 1, n), unit(n, k)) for k in range(n)]
    return betas, gammas


@dataclass(frozen=True)
class TaggedRoot:
    root: RankVector
    vertex: int  # i in c^{-r}(beta_i)
    r: int


def positive_roots_coxeter(C, D) -> list[TaggedRoot]:
    """Positive roots as ``c^{-r}(beta_i)``, each tagged with its first witness."""
    if classify(C, D) != DYNKIN:
        raise NotDynkin("not Dynkin")
    betas, _ = beta_gamma(C)
    seen: dict[RankVector, TaggedRoot] = {}
    cap = _orbit_cap(C, D)
    for i, b in enumerate(betas):
        x, r = b, 0
        while is_positive(x):
            if x not in seen:
                seen[x] = TaggedRoot(x, i, r)
            x = coxeter_minus(C, x)
            r += 1
            if r > cap:
                raise RuntimeError("Coxeter orbit did not leave the positive cone")
    return sorted(seen.values(), key=lambda t: (sum(t.root), t.root))


def positive_roots_gamma(C, D) -> set[RankVector]:
    """Positive roots as ``c^s(gamma_j)``: the injective-side enumeration."""
    if classify(C, D) != DYNKIN:
        raise NotDynkin("not Dynkin")
    _, gammas = beta_gamma(C)
    out = set()
    cap = _orbit_cap(C, D)
    for g in gammas:
        x, s = g, 0
        while is_positive(x):
            out.add(x)
            x = coxeter_plus(C, x)
            s += 1
            if s > cap:
                raise RuntimeError("Coxeter orbit did not leave the positive cone")
    return out


def _orbit_cap(C, D) -> int:
    n = len(C)
    return 10 * n * max(max(D), max(abs(v) for row in C for v in row))


def default_bound(C) -> int:
    n = len(C)
    return 6 * n * max(abs(v) for row in C for v in row)


def real_roots_orbit_bfs(C, bound: int | None = None) -> set[RankVector]:
    """Closure of the simple roots under all reflections, truncated at ``bound``."""
    n = len(C)
    bound = default_bound(C) if bound is None else bound
    start = [unit(n, i) for i in range(n)]
    seen = set(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for i in range(n):
            y = simple_reflection(C, i, x)
            if y in seen or max(abs(v) for v in y) > bound:
                continue
            seen.add(y)
            queue.append(y)
    return seen


def positive_part(roots) -> set[RankVector]:
    return {x for x in roots if is_positive(x)}


def coxeter_order(C, D=None) -> int:
    """Multiplicative order of ``c+`` on the lattice, found by iteration."""
    n = len(C)
    cap = 10 * n * max(D or [1]) * max(2, max(abs(v) for row in C for v in row))
    basis = [unit(n, i) for i in range(n)]
    cur = basis
    for k in range(1, cap + 1):
        cur = [coxeter_plus(C, x) for x in cur]
        if cur == basis:
            return k
    raise RuntimeError("Coxeter transformation has no finite order within the cap")


@dataclass(frozen=True)
class DescentWitness:
    t: int  # number of Coxeter steps c+
    i: int  # number of extra simple reflections s_0, ..., s_{i-1}
    vertex: int  # the unit vector reached is alpha_vertex, vertex == i


def descent_witness(C, D, x) -> DescentWitness:
    """Least ``t`` with ``c^t x > 0`` and ``c^{t+1} x`` not positive, then least ``i``.

    After ``t`` Coxeter steps, reflections ``s_0, s_1, ...`` are applied in index
    order until the next one would leave the positive cone; for a positive root
    the vector reached then is the unit vector at the next index.
    """
    if classify(C, D) != DYNKIN:
        raise NotDynkin("not Dynkin")
    x = tuple(x)
    n = len(C)
    if not is_positive(x):
        raise NotPositiveRoot(f"{x} is not a positive root")
    cap = _orbit_cap(C, D)
    t = 0
    while True:
        nxt = coxeter_plus(C, x)
        if not is_positive(nxt):
            break
        x, t = nxt, t + 1
        if t > cap:
            raise NotPositiveRoot("Coxeter orbit did not leave the positive cone")
    i = 0
    while i < n:
        y = simple_reflection(C, i, x)
        if not is_positive(y):
            break
        x, i = y, i + 1
    if i == n or x != unit(n, i):
        raise NotPositiveRoot("not a positive root")
    return DescentWitness(t, i, i)


def replay_witness(C, w: DescentWitness) -> RankVector:
    """Rebuild the root from its witness: ``c^{-t} s_0 ... s_{i-1} (alpha_i)``."""
    n = len(C)
    x = apply_word(C, reversed(range(w.i)), unit(n, w.vertex))
    return coxeter(C, -w.t, x)


def infinite_family(C, D, N: int) -> list[tuple[TaggedRoot]]:
    """``N`` pairwise different positive real roots ``c^{-r}(beta_i)``."""
    if classify(C, D) == DYNKIN:
        raise ValueError("is Dynkin")
    betas, _ = beta_gamma(C)
    out: list[TaggedRoot] = []
    seen = set()
    cur = list(betas)
    r = 0
    while len(out) < N:
        for i, x in enumerate(cur):
            if len(out) >= N:
                break
            if x not in seen:
                seen.add(x)
                out.append(TaggedRoot(x, i, r))
        cur = [coxeter_minus(C, x) for x in cur]
        r += 1
        if r > 10 * max(N, 1) + 10:
            raise RuntimeError("too few distinct roots produced")
    return out
