"""Exact univariate polynomials over the integers or the rationals.

Polynomials are immutable and stored densely, ``coeffs[i]`` being the
coefficient of ``x**i``.  Integer coefficients are plain ``int``; rational
coefficients are ``fractions.Fraction`` (always reduced, positive
denominator).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

__all__ = [
    "Domain",
    "DomainMismatch",
    "NEG_INF",
    "Poly",
    "PolyRing",
    "ZX",
    "QX",
    "poly_gcd",
    "content_primitive",
    "extended_gcd_field",
]

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


class DomainMismatch(ValueError):
    """Raised when combining polynomials over different coefficient domains."""


class Domain(enum.Enum):
    INTEGERS = "Z"
    RATIONALS = "Q"

    def coerce(self, c):
        if isinstance(c, bool):
            raise TypeError("bool is not a coefficient")
        if self is Domain.INTEGERS:
            if isinstance(c, int):
                return c
            if isinstance(c, Rational):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c} over Z")
                return int(c.numerator)
            raise TypeError(f"cannot use {c!r} as an integer coefficient")
        if isinstance(c, (int, Rational)):
            return Fraction(c)
        raise TypeError(f"cannot use {c!r} as a rational coefficient")

    def is_unit(self, c) -> bool:
        if self is Domain.INTEGERS:
            return c == 1 or c == -1
        return c != 0

    def divides(self, a, b) -> bool:
        """True if ``a`` divides ``b`` in this domain."""
        if a == 0:
            return b == 0
        if self is Domain.INTEGERS:
            return b % a == 0
        return True

    def div_exact(self, a, b):
        if self is Domain.INTEGERS:
            q, r = divmod(a, b)
            if r:
                raise ArithmeticError(f"{b} does not divide {a} in Z")
            return q
        return Fraction(a) / b


class Poly:
    """Dense univariate polynomial in ``x`` over a :class:`Domain`."""

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs=(), domain: Domain = Domain.INTEGERS):
        cs = [domain.coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.domain = domain

    @classmethod
    def _make(cls, cs, domain):
        # cs must already hold canonical coefficients of ``domain``
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p.domain = domain
        return p

    @classmethod
    def constant(cls, c, domain: Domain = Domain.INTEGERS) -> "Poly":
        return cls((c,), domain)

    @classmethod
    def x(cls, domain: Domain = Domain.INTEGERS) -> "Poly":
        return cls((0, 1), domain)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.coerce(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1 and self.domain.is_unit(self.coeffs[0])

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # -- coercion -----------------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.domain is not self.domain:
                raise DomainMismatch(
                    f"cannot combine polynomials over {self.domain.value} and {other.domain.value}"
                )
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Poly._make((self.domain.coerce(other),), self.domain)
        return NotImplemented

    def to_domain(self, domain: Domain) -> "Poly":
        if domain is self.domain:
            return self
        return Poly(self.coeffs, domain)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._make(out, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make([-c for c in self.coeffs], self.domain)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._make((), self.domain)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly._make(out, self.domain)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly._make((self.domain.coerce(1),), self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.domain.coerce(c)
        return Poly._make([c * a for a in self.coeffs], self.domain)

    # -- division -----------------------------------------------------------

    def divmod_field(self, other: "Poly"):
        """Euclidean division over the rationals: ``self = q*other + r``."""
        other = self._lift(other)
        if self.domain is not Domain.RATIONALS:
            raise DomainMismatch("Euclidean division needs rational coefficients")
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lc = other.coeffs[-1]
        if len(rem) - 1 < db:
            return Poly._make((), self.domain), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lc
            quo[k] = c
            if c:
                for i, cb in enumerate(other.coeffs):
                    rem[k + i] -= c * cb
        return Poly._make(quo, self.domain), Poly._make(rem[:db], self.domain)

    def exquo(self, other: "Poly"):
        """Exact quotient ``self / other`` in D[x], or ``None`` if it does not exist."""
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        dom = self.domain
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly._make((), dom) if not rem else None
        lc = other.coeffs[-1]
        quo = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            top = rem[k + db]
            if not top:
                continue
            if not dom.divides(lc, top):
                return None
            c = dom.div_exact(top, lc)
            quo[k] = c
            for i, cb in enumerate(other.coeffs):
                rem[k + i] -= c * cb
        if any(rem):
            return None
        return Poly._make(quo, dom)

    def divides(self, other: "Poly") -> bool:
        if not self:
            return not other
        return other.exquo(self) is not None

    # -- normalization ----------------------------------------------------

    def content(self):
        """Integer content (positive) over Z, or the leading coefficient over Q."""
        if not self.coeffs:
            return self.domain.coerce(0)
        if self.domain is Domain.RATIONALS:
            return self.lc
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def monic(self) -> "Poly":
        if not self:
            return self
        if self.domain is Domain.INTEGERS:
            raise DomainMismatch("monic normalization needs rational coefficients")
        lc = self.lc
        return Poly._make([c / lc for c in self.coeffs], self.domain)

    def normalize(self) -> "Poly":
        """Canonical associate: monic over Q, positive leading coefficient over Z."""
        if not self:
            return self
        if self.domain is Domain.RATIONALS:
            return self.monic()
        return -self if self.lc < 0 else self

    def clear_denominators(self):
        """Return ``(n, p)`` with integer ``n > 0`` and ``p = n*self`` over Z."""
        if self.domain is Domain.INTEGERS:
            return 1, self
        n = 1
        for c in self.coeffs:
            n = lcm(n, c.denominator)
        return n, Poly._make([int(c * n) for c in self.coeffs], Domain.INTEGERS)

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.domain is other.domain and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            if other == 0:
                return not self.coeffs
            return self.coeffs == (other,)
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def __str__(self):
        from .text import format_terms

        return format_terms(
            [((i,), c) for i, c in enumerate(self.coeffs)], ("x",)
        )

    def __repr__(self):
        return f"Poly('{self}', {self.domain.value})"


def _require_same(a: Poly, b: Poly):
    if a.domain is not b.domain:
        raise DomainMismatch("polynomials over different coefficient domains")


def _field_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a.divmod_field(b)[1]
    return a.monic()


def content_primitive(a: Poly):
    """Split an integer polynomial into ``(content, primitive part)``.

    The content is the positive gcd of the coefficients, so the sign stays
    with the primitive part: ``-6x -> (6, -x)``.
    """
    if a.domain is not Domain.INTEGERS:
        raise DomainMismatch("content/primitive part is defined for integer polynomials")
    if not a:
        raise ValueError("zero polynomial has no primitive part")
    c = a.content()
    return c, Poly._make([x // c for x in a.coeffs], a.domain)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Normalized gcd in D[x].

    Over Q the result is monic.  Over Z it is the gcd of the contents times
    the primitive gcd, with positive leading coefficient.
    """
    _require_same(a, b)
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    if not b:
        return a.normalize()
    if not a:
        return b.normalize()
    if a.domain is Domain.RATIONALS:
        return _field_gcd(a, b)
    ca, pa = content_primitive(a)
    cb, pb = content_primitive(b)
    g = _field_gcd(pa.to_domain(Domain.RATIONALS), pb.to_domain(Domain.RATIONALS))
    _, g = g.clear_denominators()
    _, g = content_primitive(g)
    return g.normalize().scale(gcd(ca, cb))


def extended_gcd_field(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``g`` monic and ``s*a + t*b == g`` over Q[x]."""
    _require_same(a, b)
    if a.domain is not Domain.RATIONALS:
        raise DomainMismatch("extended gcd needs rational coefficients")
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    zero = Poly._make((), a.domain)
    one = Poly._make((Fraction(1),), a.domain)
    r0, s0, t0 = a, one, zero
    r1, s1, t1 = b, zero, one
    while r1:
        q, r = r0.divmod_field(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


class PolyRing:
    """The ring D[x] as a matrix element type.

    Provides what generic matrix code needs: ``zero``, ``one``, element
    coercion, and exact division (``exquo``) for fraction-free elimination.
    """

    is_domain = True

    def __init__(self, domain: Domain):
        self.domain = domain
        self.zero = Poly._make((), domain)
        self.one = Poly._make((domain.coerce(1),), domain)
        self.tag = f"{domain.value}[x]"
        self.variables = ("x",)

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.domain is self.domain:
                return value
            return value.to_domain(self.domain)
        if isinstance(value, str):
            from .text import parse_univariate

            return parse_univariate(value, self.domain)
        if isinstance(value, (int, Rational)):
            return Poly((value,), self.domain)
        return Poly(value, self.domain)

    def exquo(self, a: Poly, b: Poly):
        return a.exquo(b)

    def gcd(self, a: Poly, b: Poly) -> Poly:
        return poly_gcd(a, b)

    def is_unit(self, a: Poly) -> bool:
        return a.is_unit()

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.domain is self.domain

    def __hash__(self):
        return hash(("PolyRing", self.domain))

    def __repr__(self):
        return self.tag


ZX = PolyRing(Domain.INTEGERS)
QX = PolyRing(Domain.RATIONALS)
