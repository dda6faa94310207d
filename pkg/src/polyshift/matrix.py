"""Dense matrices over an exact commutative ring.

A ring object supplies ``zero`` and ``one`` and coerces values via
``ring(value)``; elements support ``+ - *``, negation and ``==``.  Rings
that also provide ``exquo(a, b)`` (exact division, ``None`` when it fails)
and set ``is_domain`` get fraction-free elimination for determinants and
rank.  Without ``exquo`` determinants fall back to cofactor expansion and
rank is unavailable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "ShapeError",
    "RingCapabilityError",
    "Matrix",
    "det",
    "minor",
    "compound",
    "adjugate",
    "rank",
    "rank_by_minors",
    "mat_pow",
    "char_poly_reversed",
    "RingPoly",
]


class ShapeError(ValueError):
    """Dimension mismatch or out-of-range index."""


class RingCapabilityError(TypeError):
    """The ring lacks a capability the operation needs (e.g. exact division)."""


class Matrix:
    """Immutable ``rows x cols`` matrix; zero dimensions are allowed."""

    __slots__ = ("ring", "rows", "cols", "_data")

    def __init__(self, ring, entries, rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(ring(e) for e in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError(f"entries do not form a {rows}x{cols} matrix")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def _raw(cls, ring, data, rows, cols):
        m = object.__new__(cls)
        m.ring = ring
        m.rows = rows
        m.cols = cols
        m._data = tuple(tuple(r) for r in data)
        return m

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "Matrix":
        z = ring.zero
        return cls._raw(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls._raw(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, ring, values) -> "Matrix":
        values = [ring(v) for v in values]
        n = len(values)
        z = ring.zero
        return cls._raw(
            ring, [[values[i] if i == j else z for j in range(n)] for i in range(n)], n, n
        )

    @classmethod
    def hstack(cls, *blocks: "Matrix") -> "Matrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ShapeError("hstack: row counts differ")
        data = [sum((list(b._data[i]) for b in blocks), []) for i in range(rows)]
        return cls._raw(blocks[0].ring, data, rows, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: "Matrix") -> "Matrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ShapeError("vstack: column counts differ")
        data = [row for b in blocks for row in b._data]
        return cls._raw(blocks[0].ring, data, len(data), cols)

    # -- access -------------------------------------------------------------

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int):
        return self._data[i]

    def col(self, j: int):
        return tuple(r[j] for r in self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def submatrix(self, rows, cols) -> "Matrix":
        rows, cols = list(rows), list(cols)
        data = [[self._data[i][j] for j in cols] for i in rows]
        return Matrix._raw(self.ring, data, len(rows), len(cols))

    @property
    def T(self) -> "Matrix":
        data = [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Matrix._raw(self.ring, data, self.cols, self.rows)

    def map(self, f, ring=None) -> "Matrix":
        ring = ring or self.ring
        return Matrix._raw(ring, [[f(e) for e in r] for r in self._data], self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not e for r in self._data for e in r)

    # -- arithmetic -----------------------------------------------------------

    def _check_ring(self, other: "Matrix"):
        if other.ring != self.ring:
            raise ShapeError(f"matrices over different rings: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        data = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)]
        return Matrix._raw(self.ring, data, self.rows, self.cols)

    def __neg__(self):
        return self.map(lambda e: -e)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_ring(other)
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            z = self.ring.zero
            cols = other.col
            bcols = [cols(j) for j in range(other.cols)]
            data = []
            for ra in self._data:
                out = []
                for cb in bcols:
                    acc = z
                    for a, b in zip(ra, cb):
                        if a and b:
                            acc = acc + a * b
                    out.append(acc)
                data.append(out)
            return Matrix._raw(self.ring, data, self.rows, other.cols)
        s = self.ring(other)
        return self.map(lambda e: s * e)

    def __rmul__(self, other):
        s = self.ring(other)
        return self.map(lambda e: s * e)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self._data == other._data

    __hash__ = None

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self._data)
        return f"Matrix({self.ring!r}, {self.rows}x{self.cols}, [{body}])"


# -- determinants -------------------------------------------------------------

def _det_cofactor(rows, ring):
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    n = len(rows)
    if n == 0:
        return ring.one
    memo = {}

    def rec(i, cols):
        if i == n:
            return ring.one
        key = cols
        if key in memo:
            return memo[key]
        acc = ring.zero
        sign = 1
        for pos, j in enumerate(cols):
            e = rows[i][j]
            if e:
                sub = rec(i + 1, cols[:pos] + cols[pos + 1:])
                term = e * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, tuple(range(n)))


def _exquo(ring, a, b):
    q = ring.exquo(a, b)
    if q is None:
        raise ArithmeticError("fraction-free elimination hit an inexact division")
    return q


def _det_bareiss(rows, ring):
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return ring.one
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = _exquo(ring, pk * m[i][j] - mik * m[k][j], prev)
            m[i][k] = ring.zero
        prev = pk
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def det(m: Matrix, method: str | None = None):
    """Exact determinant.

    ``method`` is ``"bareiss"`` (needs ``ring.exquo``), ``"cofactor"``, or
    ``None`` to pick Bareiss for orders above 4 when exact division exists.
    """
    if not m.is_square():
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    has_exquo = callable(getattr(m.ring, "exquo", None))
    if method is None:
        method = "bareiss" if has_exquo and m.rows > 4 else "cofactor"
    if method == "bareiss":
        if not has_exquo:
            raise RingCapabilityError(f"{m.ring!r} has no exact division")
        return _det_bareiss(m._data, m.ring)
    if method == "cofactor":
        return _det_cofactor(m._data, m.ring)
    raise ValueError(f"unknown determinant method {method!r}")


def _check_index_set(idx, bound, what):
    idx = tuple(idx)
    if any(not 0 <= i < bound for i in idx):
        raise ShapeError(f"{what} index out of range in {idx}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ShapeError(f"{what} indices must be strictly increasing: {idx}")
    return idx


def minor(m: Matrix, rows, cols):
    """Determinant of the submatrix on the given (0-based, increasing) rows and columns."""
    rows = _check_index_set(rows, m.rows, "row")
    cols = _check_index_set(cols, m.cols, "column")
    if len(rows) != len(cols) or not rows:
        raise ShapeError("minor needs equal-length, nonempty row and column sets")
    return det(m.submatrix(rows, cols))


def compound(m: Matrix, t: int) -> Matrix:
    """The ``t``-th compound: all ``t x t`` minors, subsets in lexicographic order."""
    if not 1 <= t <= min(m.rows, m.cols):
        raise ShapeError(f"compound order {t} out of range for {m.shape}")
    rsets = list(combinations(range(m.rows), t))
    csets = list(combinations(range(m.cols), t))
    data = [[det(m.submatrix(r, c)) for c in csets] for r in rsets]
    return Matrix._raw(m.ring, data, len(rsets), len(csets))


def adjugate(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeError(f"adjugate of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return m
    if n == 1:
        return Matrix.identity(m.ring, 1)
    idx = range(n)
    data = [[None] * n for _ in idx]
    for i in idx:
        for j in idx:
            c = det(m.submatrix([r for r in idx if r != i], [k for k in idx if k != j]))
            data[j][i] = c if (i + j) % 2 == 0 else -c
    return Matrix._raw(m.ring, data, n, n)


# -- rank ---------------------------------------------------------------------

def _require_domain(m: Matrix):
    if not getattr(m.ring, "is_domain", False) or not callable(getattr(m.ring, "exquo", None)):
        raise RingCapabilityError(f"rank needs an integral domain with exact division, got {m.ring!r}")


def rank(m: Matrix) -> int:
    """Rank over the fraction field, by fraction-free Gaussian elimination."""
    _require_domain(m)
    ring = m.ring
    a = [list(r) for r in m._data]
    nrows, ncols = m.rows, m.cols
    prev = ring.one
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            for j in range(c + 1, ncols):
                a[i][j] = _exquo(ring, p * a[i][j] - aic * a[r][j], prev)
            a[i][c] = ring.zero
        prev = p
        r += 1
    return r


def rank_by_minors(m: Matrix) -> int:
    """Largest order of a nonzero minor, by exhaustive search (small matrices only)."""
    for t in range(min(m.rows, m.cols), 0, -1):
        for rs in combinations(range(m.rows), t):
            for cs in combinations(range(m.cols), t):
                if det(m.submatrix(rs, cs), method="cofactor"):
                    return t
    return 0


# -- powers and characteristic polynomial -----------------------------------

def mat_pow(m: Matrix, k: int) -> Matrix:
    if not m.is_square():
        raise ShapeError(f"power of non-square {m.shape} matrix")
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = Matrix.identity(m.ring, m.rows)
    base = m
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


@dataclass(frozen=True)
class RingPoly:
    """Polynomial in a fresh indeterminate ``t`` with coefficients in a ring.

    ``coeffs`` is ascending in the power of ``t``, without trailing zeros.
    """

    ring: object
    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __eq__(self, other):
        if isinstance(other, RingPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            tp = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = str(c)
            if not tp:
                parts.append(f"({cs})" if parts else cs)
            else:
                parts.append(f"({cs})*{tp}")
        return " + ".join(parts)


def char_poly_reversed(m: Matrix) -> RingPoly:
    """``det(I - t*m)``: the coefficient of ``t^k`` is ``(-1)^k`` times the
    sum of the principal ``k x k`` minors of ``m``."""
    if not m.is_square():
        raise ShapeError(f"det(I - tM) of non-square {m.shape} matrix")
    ring = m.ring
    coeffs = [ring.one]
    for k in range(1, m.rows + 1):
        acc = ring.zero
        for s in combinations(range(m.rows), k):
            acc = acc + det(m.submatrix(s, s))
        coeffs.append(acc if k % 2 == 0 else -acc)
    return RingPoly(ring, tuple(coeffs))
