"""Primeness tests and factorizations of matrices over D[x], D = Z or Q.

Over Q[x] everything rests on column Hermite reduction.  For a full-row-rank
``c`` the column Hermite form ``T`` (square, lower triangular) satisfies
``c = T * U`` with ``U`` minor left prime; it is computed modulo a nonzero
maximal minor so intermediate degrees stay bounded.

Over Z[x] the row space found over Q[x] is first cleared to primitive
integer rows and then *saturated*: while every maximal minor is divisible
by a prime ``p``, the rows are dependent modulo ``p``, and a unimodular row
transform exposes a row divisible by ``p`` which is divided out.  The
result is minor left prime (MLP), and the left factor is recovered as an
exact rational quotient.  Every result is checked by multiplication before
it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, lcm

from .matrix import Matrix, adjugate, det, rank
from .ring import Domain, Poly, PolyRing, QX, extended_gcd_field, poly_gcd

__all__ = [
    "FactorizationIncomplete",
    "NotIntegral",
    "NotMLP",
    "RankDeficient",
    "SingularMatrix",
    "MLPCertificate",
    "LUFactorization",
    "FullRankFactorization",
    "maximal_minors",
    "minors_gcd",
    "is_mlp",
    "mlp_certificate",
    "lu_gcd_factor",
    "rational_matrix_quotient",
    "full_rank_factorization",
]


class FactorizationIncomplete(RuntimeError):
    """The construction could not certify its result; nothing is returned."""


class NotIntegral(ArithmeticError):
    """A fraction-field quotient has an entry outside D[x]."""


class NotMLP(ValueError):
    """The maximal minors have a non-unit common divisor."""


class RankDeficient(ValueError):
    """The input does not have full row rank."""


class SingularMatrix(ValueError):
    pass


def _poly_ring(m: Matrix) -> PolyRing:
    if not isinstance(m.ring, PolyRing):
        raise TypeError(f"expected a matrix over Z[x] or Q[x], got {m.ring!r}")
    return m.ring


def _prime_factors(n: int):
    from sympy import factorint

    return sorted(factorint(abs(n)))


def _unit_multiple(a: Poly, b: Poly) -> bool:
    """True if ``a`` and ``b`` are associates in D[x]."""
    if not a or not b:
        return not a and not b
    q = a.exquo(b)
    return q is not None and q.is_unit()


# -- minors -------------------------------------------------------------------

def maximal_minors(c: Matrix):
    """``[(column subset, minor)]`` for all ``m x m`` minors, lexicographic order."""
    rows = range(c.rows)
    return [(s, det(c.submatrix(rows, s))) for s in combinations(range(c.cols), c.rows)]


def minors_gcd(c: Matrix) -> Poly:
    """Normalized gcd of the maximal minors of a full-row-rank matrix."""
    _poly_ring(c)
    if c.rows > c.cols:
        raise RankDeficient(f"{c.rows}x{c.cols} matrix cannot have full row rank")
    g = None
    for _, d in maximal_minors(c):
        if d:
            g = d.normalize() if g is None else poly_gcd(g, d)
    if g is None:
        raise RankDeficient("all maximal minors vanish")
    return g


def _require_full_row_rank(c: Matrix):
    if c.rows > c.cols or rank(c) != c.rows:
        raise RankDeficient(f"{c.rows}x{c.cols} input does not have full row rank")


def is_mlp(c: Matrix) -> bool:
    """Minor left prime: the maximal minors generate the unit ideal's gcd."""
    _poly_ring(c)
    _require_full_row_rank(c)
    return minors_gcd(c).is_unit()


# -- MLP certificate ---------------------------------------------------------

@dataclass(frozen=True)
class MLPCertificate:
    """Witness pairs ``(Z_j, d_j)`` with ``C * Z_j == d_j * I`` and ``gcd(d_j) == 1``."""

    subject: Matrix
    witnesses: tuple

    def check(self) -> bool:
        c = self.subject
        eye = Matrix.identity(c.ring, c.rows)
        for z, d in self.witnesses:
            if c * z != eye * d:
                return False
        g = None
        for _, d in self.witnesses:
            if d:
                g = d.normalize() if g is None else poly_gcd(g, d)
        return g is not None and g.is_unit()


def _embedding_matrix(c: Matrix, cols, adj: Matrix) -> Matrix:
    """``n x m`` matrix whose rows ``cols`` are the rows of ``adj``, zero elsewhere."""
    ring = c.ring
    data = [[ring.zero] * c.rows for _ in range(c.cols)]
    for k, j in enumerate(cols):
        data[j] = list(adj.row(k))
    return Matrix._raw(ring, data, c.cols, c.rows)


def mlp_certificate(c: Matrix) -> MLPCertificate:
    """Build witnesses from the adjugates of the maximal submatrices.

    A Bezout combination of the minors over Q[x] gives ``C*Z_0 = d_0*I``
    with ``d_0`` a positive integer after clearing denominators.  Over Z,
    each prime ``p`` of ``d_0`` gets one more witness obtained by adding the
    first minor not divisible by ``p``, so ``d_j = d_0 + minor`` and the
    ``d_j`` are coprime.  Over Q, ``d_0 = 1`` and one witness suffices.
    """
    ring = _poly_ring(c)
    _require_full_row_rank(c)
    minors = maximal_minors(c)
    if not minors_gcd(c).is_unit():
        raise NotMLP("maximal minors have a non-unit common divisor")

    nonzero = [(s, d) for s, d in minors if d]
    s0, d0 = nonzero[0]
    g = d0.to_domain(Domain.RATIONALS)
    coeffs = {s0: QX.one}
    for s, d in nonzero[1:]:
        g, u, v = extended_gcd_field(g, d.to_domain(Domain.RATIONALS))
        coeffs = {k: u * w for k, w in coeffs.items()}
        coeffs[s] = v
    g_inv = 1 / g.lc  # a lone nonzero minor leaves g a constant other than 1
    coeffs = {k: w.scale(g_inv) for k, w in coeffs.items()}

    if ring.domain is Domain.RATIONALS:
        scale = 1
        a = coeffs
    else:
        scale = 1
        for w in coeffs.values():
            scale = lcm(scale, *(x.denominator for x in w.coeffs)) if w.coeffs else scale
        a = {k: w.scale(scale).clear_denominators()[1] for k, w in coeffs.items()}
        common = scale
        for w in a.values():
            common = gcd(common, w.content())
        scale //= common
        a = {k: Poly._make([x // common for x in w.coeffs], Domain.INTEGERS) for k, w in a.items()}

    blocks = {s: _embedding_matrix(c, s, adjugate(c.submatrix(range(c.rows), s))) for s, _ in nonzero}
    zero_z = Matrix.zeros(ring, c.cols, c.rows)
    z0 = zero_z
    for s, w in a.items():
        if w:
            z0 = z0 + blocks[s] * w
    d0 = ring(scale)
    witnesses = [(z0, d0)]
    if ring.domain is Domain.INTEGERS and scale != 1:
        for p in _prime_factors(scale):
            s, d = next((s, d) for s, d in nonzero if any(x % p for x in d.coeffs))
            witnesses.append((z0 + blocks[s], d0 + d))

    cert = MLPCertificate(c, tuple(witnesses))
    if not cert.check():
        raise FactorizationIncomplete("MLP certificate failed verification")
    return cert


# -- exact rational quotient ------------------------------------------------

def rational_matrix_quotient(a21: Matrix, a11: Matrix) -> Matrix:
    """``a21 * a11^-1`` computed as ``a21 * adj(a11) / det(a11)``, entrywise exact."""
    ring = _poly_ring(a11)
    if not a11.is_square():
        raise SingularMatrix(f"{a11.shape} matrix is not square")
    if a21.cols != a11.rows:
        raise ValueError(f"cannot form {a21.shape} * inverse of {a11.shape}")
    d = det(a11)
    if not d:
        raise SingularMatrix("divisor matrix is singular")
    num = a21 * adjugate(a11)
    out = []
    for i in range(num.rows):
        row = []
        for j in range(num.cols):
            q = num[i, j].exquo(d)
            if q is None:
                raise NotIntegral(f"entry ({i}, {j}) is not in {ring.tag}")
            row.append(q)
        out.append(row)
    return Matrix._raw(ring, out, num.rows, num.cols)


# -- column Hermite form over Q[x], reduced modulo a maximal minor -------------

def _independent_rows(a: Matrix):
    """Greedy list of row indices spanning the rational row space of ``a``."""
    chosen = []
    for i in range(a.rows):
        trial = chosen + [i]
        if rank(a.submatrix(trial, range(a.cols))) == len(trial):
            chosen = trial
    return chosen


def _hermite_mod_minor(c: Matrix):
    """Column Hermite form ``T`` (r x r, lower triangular, monic diagonal) of a
    full-row-rank ``c`` over Q[x], together with ``U = T^-1 c``.

    The column module of ``c`` contains ``D * Q[x]^r`` for any nonzero maximal
    minor ``D``, so entries below the current row may be reduced modulo ``D``
    and ``D * e_i`` joins the candidates for the pivot of row ``i``.  This
    keeps degrees below ``deg D`` throughout.  ``det T`` is the monic gcd of
    the maximal minors and ``U`` is minor left prime.
    """
    r, n = c.shape
    rows = [[e.to_domain(Domain.RATIONALS) for e in row] for row in c._data]
    cq = Matrix._raw(QX, rows, r, n)
    D = next(d for _, d in maximal_minors(cq) if d).monic()
    zero = QX.zero

    def red(e):
        return e.divmod_field(D)[1] if e.degree >= D.degree else e

    cols = [[red(rows[i][j]) for i in range(r)] for j in range(n)]
    hs = []
    for i in range(r):
        dcol = [zero] * r
        dcol[i] = D
        work = [col for col in cols if col[i]] + [dcol]
        rest = [col for col in cols if not col[i] and any(col)]
        while len(work) > 1:
            work.sort(key=lambda col: col[i].degree)
            piv, nxt = work[0], [work[0]]
            for col in work[1:]:
                q, _ = col[i].divmod_field(piv[i])
                col = [x if k < i else (x - q * y if k == i else red(x - q * y))
                       for k, (x, y) in enumerate(zip(col, piv))]
                if col[i]:
                    nxt.append(col)
                elif any(col):
                    rest.append(col)
            work = nxt
        h = work[0]
        inv = 1 / h[i].lc
        hs.append([x.scale(inv) for x in h])
        cols = rest
    # reduce entries left of each diagonal modulo the diagonal entry
    for k in range(r):
        for i in range(k):
            q, _ = hs[i][k].divmod_field(hs[k][k])
            if q:
                hs[i] = [x - q * y for x, y in zip(hs[i], hs[k])]
    T = [[hs[j][i] for j in range(r)] for i in range(r)]
    U = []
    for k in range(r):
        acc = rows[k]
        for i in range(k):
            if T[k][i]:
                acc = [x - T[k][i] * y for x, y in zip(acc, U[i])]
        out = []
        for x in acc:
            q = x.exquo(T[k][k])
            if q is None:
                raise FactorizationIncomplete("Hermite form does not divide the input")
            out.append(q)
        U.append(out)
    return Matrix._raw(QX, T, r, r), Matrix._raw(QX, U, r, n)


# -- saturation over Z[x] -----------------------------------------------------

def _mod_p(f: Poly, p: int):
    cs = [x % p for x in f.coeffs]
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _divmod_p(a, b, p):
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return [], rem
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv % p
        quo[k] = c
        if c:
            for i, cb in enumerate(b):
                rem[k + i] = (rem[k + i] - c * cb) % p
    rem = rem[:db]
    while rem and not rem[-1]:
        rem.pop()
    return quo, rem


def _saturate_at(B, p):
    """Unimodular row operations over Z[x] driven by echelon form mod ``p``;
    rows that vanish mod ``p`` are divided by ``p`` (in place)."""
    r, n = len(B), len(B[0])
    c = 0
    for j in range(n):
        if c == r:
            break
        found = False
        while True:
            cand = [i for i in range(c, r) if _mod_p(B[i][j], p)]
            if not cand:
                break
            found = True
            piv = min(cand, key=lambda i: (len(_mod_p(B[i][j], p)), i))
            B[c], B[piv] = B[piv], B[c]
            others = [i for i in range(c + 1, r) if _mod_p(B[i][j], p)]
            if not others:
                break
            pc = _mod_p(B[c][j], p)
            for i in others:
                q, _ = _divmod_p(_mod_p(B[i][j], p), pc, p)
                qz = Poly._make(q, Domain.INTEGERS)
                B[i] = [x - qz * y for x, y in zip(B[i], B[c])]
        if found:
            c += 1
    if c == r:
        raise FactorizationIncomplete(f"rows are independent mod {p}; nothing to saturate")
    for i in range(c, r):
        B[i] = [Poly._make([x // p for x in e.coeffs], Domain.INTEGERS) for e in B[i]]


def _primitive_integer_rows(W: Matrix):
    rows = []
    for i in range(W.rows):
        row = W.row(i)
        den = 1
        for e in row:
            den = lcm(den, *(c.denominator for c in e.coeffs)) if e.coeffs else den
        ints = [e.scale(den).clear_denominators()[1] for e in row]
        cont = 0
        for e in ints:
            cont = gcd(cont, e.content())
        rows.append([Poly._make([x // cont for x in e.coeffs], Domain.INTEGERS) for e in ints])
    return rows


def _orient(row):
    first = next(e for e in row if e)
    return [-e for e in row] if first.lc < 0 else row


def _mlp_row_basis(W: Matrix) -> Matrix:
    """An MLP matrix over Z[x] with the same rational row space as the
    Q[x]-MLP matrix ``W``."""
    from .ring import ZX

    r, n = W.shape
    B = _primitive_integer_rows(W)
    while True:
        g = minors_gcd(Matrix._raw(ZX, B, r, n))
        if g.is_unit():
            break
        if not g.is_constant():
            raise FactorizationIncomplete(f"non-constant common minor factor {g} over Z[x]")
        _saturate_at(B, _prime_factors(g.coeffs[0])[0])
    return Matrix._raw(ZX, [_orient(row) for row in B], r, n)


def _left_factor(a: Matrix, q: Matrix) -> Matrix:
    """Solve ``a = P * q`` for ``P`` using the first nonsingular column block of ``q``."""
    rows = range(q.rows)
    for s in combinations(range(q.cols), q.rows):
        block = q.submatrix(rows, s)
        if det(block):
            return rational_matrix_quotient(a.submatrix(range(a.rows), s), block)
    raise FactorizationIncomplete("right factor has no nonsingular maximal block")


# -- factorizations ----------------------------------------------------------

@dataclass(frozen=True)
class LUFactorization:
    L: Matrix
    U: Matrix
    d: Poly


@dataclass(frozen=True)
class FullRankFactorization:
    P: Matrix
    Q: Matrix
    r: int
    verification: dict = field(default_factory=dict, compare=False)


def lu_gcd_factor(a: Matrix) -> LUFactorization:
    """Factor a full-row-rank ``a = L * U`` with ``det L`` the gcd ``d`` of the
    maximal minors of ``a`` (up to a unit) and ``U`` minor left prime.

    Square nonsingular input returns ``L = a``, ``U = I``.
    """
    ring = _poly_ring(a)
    _require_full_row_rank(a)
    d = minors_gcd(a)
    m, n = a.shape
    if m == n:
        L, U = a, Matrix.identity(ring, n)
    else:
        T, U = _hermite_mod_minor(a)
        if ring.domain is Domain.RATIONALS:
            L = T
        else:
            U = _mlp_row_basis(U)
            L = _left_factor(a, U)
    if L * U != a:
        raise FactorizationIncomplete("L*U does not reproduce the input")
    if not _unit_multiple(det(L), d):
        raise FactorizationIncomplete("det(L) is not an associate of the minor gcd")
    if m != n and not is_mlp(U):
        raise FactorizationIncomplete("U factor is not minor left prime")
    return LUFactorization(L, U, d)


def full_rank_factorization(a: Matrix) -> FullRankFactorization:
    """``a = P * Q`` with ``P`` (m x r) and ``Q`` (r x n) both of rank ``r = rank(a)``.

    The zero matrix gives empty factors; a square nonsingular matrix gives
    ``(a, I)``.  Over Z[x] the right factor is minor left prime.
    """
    ring = _poly_ring(a)
    m, n = a.shape
    r_a = rank(a)
    if r_a == 0:
        P, Q = Matrix.zeros(ring, m, 0), Matrix.zeros(ring, 0, n)
    elif m == n == r_a:
        P, Q = a, Matrix.identity(ring, n)
    else:
        basis = _independent_rows(a)
        _, Q = _hermite_mod_minor(a.submatrix(basis, range(n)))
        if ring.domain is Domain.INTEGERS:
            Q = _mlp_row_basis(Q)
        P = _left_factor(a, Q)
    exact = P * Q == a
    rp, rq = rank(P), rank(Q)
    if not exact or rp != r_a or rq != r_a:
        raise FactorizationIncomplete(
            f"factorization failed verification (exact={exact}, rank P={rp}, rank Q={rq}, rank A={r_a})"
        )
    return FullRankFactorization(
        P, Q, r_a, {"rank": r_a, "rank_P": rp, "rank_Q": rq, "exact_product": exact}
    )
