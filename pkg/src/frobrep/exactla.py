"""Exact dense linear algebra over the rationals and prime fields.

Everything here is pure: matrices are never mutated after construction.
Rational entries are kept as ``int`` when integral and ``Fraction``
otherwise; prime-field entries are ints in ``[0, p)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import mul
from typing import Iterable, Sequence


class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    @staticmethod
    def norm(x):
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    @staticmethod
    def inv(x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        q = Fraction(1) / x
        return q.numerator if q.denominator == 1 else q

    def div(self, a, b):
        return self.norm(Fraction(a) / b)

    def random(self, rng, lo=-3, hi=3):
        return rng.randint(lo, hi)

    def to_json(self, x):
        x = self.norm(x)
        return x if isinstance(x, int) else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    p: int

    characteristic = property(lambda self: self.p)
    name = property(lambda self: f"GF({self.p})")

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def random(self, rng, lo=None, hi=None):
        return rng.randrange(self.p)

    def to_json(self, x):
        return x % self.p

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return PrimeField(p)


def field_from_name(name) -> RationalField | PrimeField:
    if name in (None, "QQ", "Q", "rationals", 0, "0"):
        return QQ
    if isinstance(name, str) and name.upper().startswith("GF("):
        name = name[3:-1]
    return GF(int(name))


def field_name(F) -> str:
    return "QQ" if F == QQ else str(F.p)


class Matrix:
    """Immutable dense matrix with entries in ``field``."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, rows, ncols: int | None = None, field=QQ, _trusted=False):
        if not _trusted:
            rows = [[field(x) for x in r] for r in rows]
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows and ncols is None else (ncols or 0)
        self.field = field
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix rows")

    # construction

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ) -> Matrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols, field, True)

    @classmethod
    def identity(cls, n, field=QQ) -> Matrix:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        return cls(rows, n, field, True)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, field=QQ) -> Matrix:
        cols = [[field(x) for x in c] for c in cols]
        rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in range(nrows)]
        return cls(rows, len(cols), field, True)

    @classmethod
    def column(cls, v: Sequence, field=QQ) -> Matrix:
        return cls([[field(x)] for x in v], 1, field, True)

    # access

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def take_rows(self, idx: Iterable[int]) -> Matrix:
        return Matrix([list(self.rows[i]) for i in idx], self.ncols, self.field, True)

    def take_cols(self, idx: Iterable[int]) -> Matrix:
        idx = list(idx)
        return Matrix([[r[j] for j in idx] for r in self.rows], len(idx), self.field, True)

    def row_block(self, start, stop) -> Matrix:
        return self.take_rows(range(start, stop))

    def col_block(self, start, stop) -> Matrix:
        return self.take_cols(range(start, stop))

    @property
    def T(self) -> Matrix:
        if self.nrows == 0:
            return Matrix.zeros(self.ncols, 0, self.field)
        return Matrix([list(c) for c in zip(*self.rows)], self.nrows, self.field, True)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def to_lists(self):
        return [[self.field.to_json(x) for x in r] for r in self.rows]

    # arithmetic

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        norm = self.field.norm
        if other.ncols == 0 or self.nrows == 0:
            return Matrix.zeros(self.nrows, other.ncols, self.field)
        if self.ncols == 0:
            return Matrix.zeros(self.nrows, other.ncols, self.field)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(j, x) for j, x in enumerate(r) if x]
            if not nz:
                out.append([0] * other.ncols)
                continue
            if len(nz) * 3 < len(r):
                out.append([norm(sum(x * c[j] for j, x in nz)) for c in cols])
            else:
                out.append([norm(sum(map(mul, r, c))) for c in cols])
        return Matrix(out, other.ncols, self.field, True)

    def apply(self, v: Sequence) -> tuple:
        norm = self.field.norm
        return tuple(norm(sum(map(mul, r, v))) for r in self.rows)

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in +")
        norm = self.field.norm
        rows = [[norm(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix(rows, self.ncols, self.field, True)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in -")
        norm = self.field.norm
        rows = [[norm(a - b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix(rows, self.ncols, self.field, True)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        norm = self.field.norm
        return Matrix([[norm(c * x) for x in r] for r in self.rows], self.ncols, self.field, True)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square() or k < 0:
            raise ValueError("power of non-square matrix or negative exponent")
        result = Matrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.rows))))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def hstack(mats: Sequence[Matrix], nrows: int | None = None, field=None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(nrows or 0, 0, field or QQ)
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise ValueError("hstack row mismatch")
    rows = [sum((m.rows[i] for m in mats), []) for i in range(n)]
    return Matrix(rows, sum(m.ncols for m in mats), mats[0].field, True)


def vstack(mats: Sequence[Matrix], ncols: int | None = None, field=None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(0, ncols or 0, field or QQ)
    c = mats[0].ncols
    if any(m.ncols != c for m in mats):
        raise ValueError("vstack column mismatch")
    rows = [list(r) for m in mats for r in m.rows]
    return Matrix(rows, c, mats[0].field, True)


def block_diag(mats: Sequence[Matrix], field=None) -> Matrix:
    mats = list(mats)
    F = mats[0].field if mats else (field or QQ)
    R = sum(m.nrows for m in mats)
    C = sum(m.ncols for m in mats)
    rows = [[0] * C for _ in range(R)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.rows):
            rows[r0 + i][c0:c0 + m.ncols] = row
        r0 += m.nrows
        c0 += m.ncols
    return Matrix(rows, C, F, True)


def repeat_diag(m: Matrix, k: int) -> Matrix:
    """``I_k ⊗ m``: block diagonal with ``k`` copies of ``m``."""
    return block_diag([m] * k, field=m.field)


# --- row reduction ---------------------------------------------------------


def _content(row):
    g = gcd(*row)
    return g


def _rref_int(R, ncols):
    # fraction-free Gauss-Jordan on integer rows; pivot rows normalized at the end
    m = len(R)
    piv = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = None
        for k in range(r, m):
            v = R[k][c]
            if v:
                if best is None or abs(v) < abs(R[best][c]):
                    best = k
                    if v == 1 or v == -1:
                        break
        if best is None:
            continue
        R[r], R[best] = R[best], R[r]
        pr = R[r]
        g = _content(pr)
        if pr[c] < 0:
            g = -g
        if g != 1:
            pr = [x // g for x in pr]
            R[r] = pr
        pv = pr[c]
        nz = [j for j, x in enumerate(pr) if x]
        for k in range(m):
            if k == r:
                continue
            rk = R[k]
            a = rk[c]
            if not a:
                continue
            if pv == 1:
                for j in nz:
                    rk[j] -= a * pr[j]
            else:
                rk = [pv * x for x in rk]
                for j in nz:
                    rk[j] -= a * pr[j]
                g = _content(rk)
                if g > 1:
                    rk = [x // g for x in rk]
                R[k] = rk
        piv.append(c)
        r += 1
    out = []
    for t, c in enumerate(piv):
        p = R[t][c]
        out.append([x // p if x % p == 0 else Fraction(x, p) for x in R[t]])
    for t in range(len(piv), m):
        out.append([0] * ncols)
    return out, piv


def _rref_modp(R, ncols, p):
    m = len(R)
    piv = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = next((k for k in range(r, m) if R[k][c]), None)
        if best is None:
            continue
        R[r], R[best] = R[best], R[r]
        inv = pow(R[r][c], -1, p)
        pr = [x * inv % p for x in R[r]]
        R[r] = pr
        nz = [j for j, x in enumerate(pr) if x]
        for k in range(m):
            if k == r:
                continue
            rk = R[k]
            a = rk[c]
            if a:
                for j in nz:
                    rk[j] = (rk[j] - a * pr[j]) % p
        piv.append(c)
        r += 1
    return R, piv


def _to_int_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            if type(x) is Fraction:
                den = den * x.denominator // gcd(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([x * den if type(x) is int else x.numerator * (den // x.denominator)
                        for x in r])
    return out


def _rref_raw(m: Matrix):
    if m.field == QQ:
        return _rref_int(_to_int_rows(m.rows), m.ncols)
    return _rref_modp([list(r) for r in m.rows], m.ncols, m.field.p)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows, piv = _rref_raw(m)
    return Matrix(rows, m.ncols, m.field, True), tuple(piv)


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(_rref_raw(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the null space ``{x : m x = 0}`` as a list of tuples."""
    if m.nrows == 0:
        return [tuple(1 if i == j else 0 for i in range(m.ncols)) for j in range(m.ncols)]
    rows, piv = _rref_raw(m)
    pivset = set(piv)
    norm = m.field.norm
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [0] * m.ncols
        v[f] = 1
        for t, c in enumerate(piv):
            v[c] = norm(-rows[t][f])
        basis.append(tuple(v))
    return basis


def kernel_matrix(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of ``m``."""
    return Matrix.from_columns(kernel_basis(m), m.ncols, m.field)


def solve(m: Matrix, b: Sequence):
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side has wrong length")
    x = solve_matrix(m, Matrix.column(b, m.field))
    return None if x is None else x.col(0)


def solve_matrix(m: Matrix, B: Matrix):
    """Some ``X`` with ``m X = B``, or ``None`` when inconsistent."""
    if B.nrows != m.nrows:
        raise ValueError("right-hand side has wrong number of rows")
    F = m.field
    if m.nrows == 0:
        return Matrix.zeros(m.ncols, B.ncols, F)
    aug = hstack([m, B])
    rows, piv = _rref_raw(aug)
    if any(c >= m.ncols for c in piv):
        return None
    X = [[0] * B.ncols for _ in range(m.ncols)]
    for t, c in enumerate(piv):
        X[c] = list(rows[t][m.ncols:])
    return Matrix(X, B.ncols, F, True)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    X = solve_matrix(m, Matrix.identity(m.nrows, m.field))
    if X is None or rank(m) < m.nrows:
        raise ValueError("matrix is singular")
    return X


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.nrows


def column_space(m: Matrix) -> Matrix:
    """Columns of ``m`` at the pivot positions: a basis of its image."""
    if m.nrows == 0 or m.ncols == 0:
        return Matrix.zeros(m.nrows, 0, m.field)
    _, piv = _rref_raw(m)
    return m.take_cols(piv)


def complement_basis(U: Matrix) -> Matrix:
    """Standard basis vectors completing the (independent) columns of ``U``."""
    n = U.nrows
    aug = hstack([U, Matrix.identity(n, U.field)])
    _, piv = _rref_raw(aug)
    extra = [c - U.ncols for c in piv if c >= U.ncols]
    return Matrix.identity(n, U.field).take_cols(extra)


def quotient_data(U: Matrix) -> tuple[Matrix, Matrix]:
    """Projection ``pi`` with kernel ``col(U)`` and a section ``sigma`` with ``pi sigma = I``.

    ``U`` must have independent columns.
    """
    n = U.nrows
    S = complement_basis(U)
    full = hstack([U, S]) if n else Matrix.zeros(0, 0, U.field)
    if n == 0:
        return Matrix.zeros(0, 0, U.field), Matrix.zeros(0, 0, U.field)
    inv = inverse(full)
    pi = inv.row_block(U.ncols, n)
    return pi, S


def nilpotent_block_profile(n: Matrix) -> tuple[int, ...]:
    """Jordan block sizes of a nilpotent matrix, largest first."""
    d = n.nrows
    if not n.is_square():
        raise ValueError("not square")
    ranks = [d]
    p = Matrix.identity(d, n.field)
    for _ in range(d):
        p = p @ n
        ranks.append(rank(p))
    if ranks[-1] != 0:
        raise ValueError("not nilpotent")
    ranks.append(0)
    sizes = []
    for j in range(1, d + 1):
        at_least_j = ranks[j - 1] - ranks[j]
        at_least_next = ranks[j] - ranks[j + 1]
        sizes.extend([j] * (at_least_j - at_least_next))
    return tuple(sorted(sizes, reverse=True))


def linear_system(nvars: int, equations: Iterable[dict], field=QQ) -> Matrix:
    """Dense coefficient matrix from sparse equations ``{var: coeff}``."""
    rows = []
    for eq in equations:
        if not eq:
            continue
        row = [0] * nvars
        for j, c in eq.items():
            row[j] = field.norm(row[j] + c)
        if any(row):
            rows.append(row)
    return Matrix(rows, nvars, field, True)


def determinant(m: Matrix):
    """Determinant by fraction-free Bareiss elimination."""
    if not m.is_square():
        raise ValueError("determinant of non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    F = m.field
    if F != QQ:
        a = [list(r) for r in m.rows]
        det = 1
        for c in range(n):
            k = next((k for k in range(c, n) if a[k][c]), None)
            if k is None:
                return 0
            if k != c:
                a[c], a[k] = a[k], a[c]
                det = -det
            det = det * a[c][c] % F.p
            inv = pow(a[c][c], -1, F.p)
            for r in range(c + 1, n):
                f = a[r][c] * inv % F.p
                if f:
                    a[r] = [(x - f * y) % F.p for x, y in zip(a[r], a[c])]
        return det % F.p
    a = _to_int_rows(m.rows)
    den = 1
    for r, ar in zip(m.rows, a):
        j = next((j for j, x in enumerate(r) if x), None)
        if j is None:
            return 0
        den *= Fraction(ar[j]) / r[j]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            s = next((r for r in range(k + 1, n) if a[r][k]), None)
            if s is None:
                return 0
            a[k], a[s] = a[s], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return QQ.norm(Fraction(sign * a[n - 1][n - 1]) / den)
