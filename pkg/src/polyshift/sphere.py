"""Q[x, y, z] and its quotient by the sphere relation x^2 + y^2 + z^2 = 1.

Normal forms substitute ``z^2 -> 1 - x^2 - y^2`` until every monomial has
z-degree at most one.  The relation is monic of degree two in ``z``, so the
rewrite is confluent and the normal form is unique.

:func:`verify_counterexample` checks the identities of the skew matrix

    A = [[0, z, -y], [-z, 0, x], [y, -x, 0]]

exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .matrix import Matrix, RingPoly, char_poly_reversed, det

__all__ = [
    "TriPoly",
    "QuotientElement",
    "TriRing",
    "SphereRing",
    "TRI",
    "SPHERE",
    "reduce_mod_sphere",
    "counterexample_matrix",
    "CounterexampleReport",
    "verify_counterexample",
    "skew_determinant",
]

VARIABLES = ("x", "y", "z")


class TriPoly:
    """Sparse polynomial in x, y, z with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = tuple(int(k) for k in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValueError(f"bad exponent triple {e}")
                clean[e] = c
        self.terms = clean

    @classmethod
    def _make(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c) -> "TriPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "TriPoly":
        e = [0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return cls({tuple(e): 1})

    def _lift(self, other):
        if isinstance(other, TriPoly):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return TriPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TriPoly._make(out)

    __radd__ = __add__

    def __neg__(self):
        return TriPoly._make({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                v = out.get(e, 0) + x * y
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return TriPoly._make(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TriPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def z_degree(self) -> int:
        return max((e[2] for e in self.terms), default=0)

    def __str__(self):
        from .text import format_terms

        return format_terms(list(self.terms.items()), VARIABLES)

    def __repr__(self):
        return f"TriPoly('{self}')"


@lru_cache(maxsize=None)
def _sphere_power(q: int) -> TriPoly:
    """``(1 - x^2 - y^2)^q``."""
    base = TriPoly({(0, 0, 0): 1, (2, 0, 0): -1, (0, 2, 0): -1})
    return base ** q


def reduce_mod_sphere(p: TriPoly) -> "QuotientElement":
    """Normal form modulo ``x^2 + y^2 + z^2 - 1`` (z-degree at most one)."""
    out = {}
    for (i, j, k), c in p.terms.items():
        q, rest = divmod(k, 2)
        for (a, b, _), d in _sphere_power(q).terms.items():
            e = (i + a, j + b, rest)
            v = out.get(e, 0) + c * d
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return QuotientElement._make(TriPoly._make(out))


class QuotientElement:
    """Element of Q[x,y,z]/(x^2+y^2+z^2-1), always held in normal form."""

    __slots__ = ("value",)

    def __init__(self, value):
        if not isinstance(value, TriPoly):
            value = TriPoly.constant(value)
        self.value = reduce_mod_sphere(value).value

    @classmethod
    def _make(cls, value: TriPoly):
        q = object.__new__(cls)
        q.value = value
        return q

    def _lift(self, other):
        if isinstance(other, QuotientElement):
            return other
        if isinstance(other, TriPoly):
            return reduce_mod_sphere(other)
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return QuotientElement._make(TriPoly.constant(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuotientElement._make(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return QuotientElement._make(-self.value)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuotientElement._make(self.value - other.value)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return reduce_mod_sphere(self.value * other.value)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"QuotientElement('{self.value}')"


class TriRing:
    """Q[x, y, z].  No exact division is offered, so determinants use cofactors."""

    is_domain = False
    tag = "Q[x,y,z]"
    variables = VARIABLES

    def __init__(self):
        self.zero = TriPoly()
        self.one = TriPoly.constant(1)

    def __call__(self, value) -> TriPoly:
        if isinstance(value, TriPoly):
            return value
        if isinstance(value, QuotientElement):
            return value.value
        if isinstance(value, str):
            from .text import parse_terms

            return TriPoly(parse_terms(value, VARIABLES))
        return TriPoly.constant(value)

    def __eq__(self, other):
        return isinstance(other, TriRing)

    def __hash__(self):
        return hash("TriRing")

    def __repr__(self):
        return self.tag


class SphereRing:
    """Q[x, y, z]/(x^2 + y^2 + z^2 - 1)."""

    is_domain = False
    tag = "Q[x,y,z]/(x^2+y^2+z^2-1)"
    variables = VARIABLES

    def __init__(self):
        self.zero = QuotientElement._make(TriPoly())
        self.one = QuotientElement._make(TriPoly.constant(1))

    def __call__(self, value) -> QuotientElement:
        if isinstance(value, QuotientElement):
            return value
        if isinstance(value, str):
            from .text import parse_terms

            value = TriPoly(parse_terms(value, VARIABLES))
        return QuotientElement(value)

    def __eq__(self, other):
        return isinstance(other, SphereRing)

    def __hash__(self):
        return hash("SphereRing")

    def __repr__(self):
        return self.tag


TRI = TriRing()
SPHERE = SphereRing()


def counterexample_matrix(ring=TRI) -> Matrix:
    return Matrix(ring, [["0", "z", "-y"], ["-z", "0", "x"], ["y", "-x", "0"]])


@dataclass(frozen=True)
class CounterexampleReport:
    cubic_relation: bool
    fourth_power_is_projector_form: bool
    idempotent: bool
    zeta_is_square: bool
    annihilates_alpha: bool
    trace_is_two: bool
    # computed artifacts
    cubic_residual: Matrix        # A^3 + (x^2+y^2+z^2) A
    phi_a4: Matrix                # reduced A^4
    idempotent_residual: Matrix   # phi(A^4)^2 - phi(A^4)
    zeta: RingPoly                # det(I - t phi(A^4))
    alpha_times_phi_a4: Matrix
    trace: object

    CHECKS = (
        ("cubic_relation", "A^3 = -(x^2+y^2+z^2) A"),
        ("fourth_power_is_projector_form", "phi(A^4) = phi(-A^2) = I - alpha^T alpha"),
        ("idempotent", "phi(A^4)^2 = phi(A^4)"),
        ("zeta_is_square", "det(I - t phi(A^4)) = (1 - t)^2"),
        ("annihilates_alpha", "alpha phi(A^4) = 0"),
        ("trace_is_two", "trace phi(A^4) = 2"),
    )

    @property
    def ok(self) -> bool:
        return all(getattr(self, name) for name, _ in self.CHECKS)

    def to_dict(self) -> dict:
        def mat(m):
            return [[str(e) for e in row] for row in m.tolist()]

        return {
            "ok": self.ok,
            "ring": SPHERE.tag,
            "checks": [{"identity": label, "ok": getattr(self, name)} for name, label in self.CHECKS],
            "artifacts": {
                "A^3 + (x^2+y^2+z^2) A": mat(self.cubic_residual),
                "phi(A^4)": mat(self.phi_a4),
                "phi(A^4)^2 - phi(A^4)": mat(self.idempotent_residual),
                "det(I - t phi(A^4))": [str(c) for c in self.zeta.coeffs],
                "alpha phi(A^4)": mat(self.alpha_times_phi_a4),
                "trace phi(A^4)": str(self.trace),
            },
        }


def verify_counterexample() -> CounterexampleReport:
    a = counterexample_matrix(TRI)
    q = TRI("x^2 + y^2 + z^2")
    a2 = a * a
    a3 = a2 * a
    cubic_residual = a3 + a * q

    phi = lambda m: m.map(reduce_mod_sphere, SPHERE)  # noqa: E731
    phi_a4 = phi(a3 * a)
    alpha = Matrix(SPHERE, [["x", "y", "z"]])
    projector = Matrix.identity(SPHERE, 3) - alpha.T * alpha
    projector_ok = phi_a4 == phi(-a2) and phi_a4 == projector

    idem_residual = phi_a4 * phi_a4 - phi_a4
    zeta = char_poly_reversed(phi_a4)
    one_minus_t_sq = RingPoly(SPHERE, (SPHERE(1), SPHERE(-2), SPHERE(1)))
    annihilated = alpha * phi_a4
    trace = phi_a4[0, 0] + phi_a4[1, 1] + phi_a4[2, 2]

    return CounterexampleReport(
        cubic_relation=cubic_residual.is_zero(),
        fourth_power_is_projector_form=projector_ok,
        idempotent=idem_residual.is_zero(),
        zeta_is_square=zeta == one_minus_t_sq,
        annihilates_alpha=annihilated.is_zero(),
        trace_is_two=trace == SPHERE(2),
        cubic_residual=cubic_residual,
        phi_a4=phi_a4,
        idempotent_residual=idem_residual,
        zeta=zeta,
        alpha_times_phi_a4=annihilated,
        trace=trace,
    )


def skew_determinant() -> TriPoly:
    """Determinant of the counterexample matrix in Q[x, y, z] by cofactors."""
    return det(counterexample_matrix(TRI))

