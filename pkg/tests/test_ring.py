from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyshift.ring import (
    NEG_INF,
    QX,
    ZX,
    Domain,
    DomainMismatch,
    Poly,
    content_primitive,
    extended_gcd_field,
    poly_gcd,
)

from _gen import polys

Z, Q = Domain.INTEGERS, Domain.RATIONALS


def zp(*cs):
    return Poly(cs, Z)


def qp(*cs):
    return Poly(cs, Q)


class TestArithmetic:
    def test_difference_of_squares(self):
        assert zp(1, 1) * zp(-1, 1) == zp(-1, 0, 1)

    def test_additive_identity(self):
        p = zp(3, 0, -2)
        assert ZX.zero + p == p

    def test_monomial_product(self):
        assert zp(0, 2) * zp(0, 0, 3) == zp(0, 0, 0, 6)

    def test_zero_is_canonical(self):
        assert Poly((0, 0, 0), Z) == Poly((), Z)
        assert Poly((), Z).degree == NEG_INF
        assert zp(1, 0, 0).degree == 0

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            zp(1) + qp(1)

    def test_non_integer_rejected_over_z(self):
        with pytest.raises(ValueError):
            Poly([Fraction(1, 2)], Z)

    @given(polys(Z), polys(Z), st.integers(-4, 4))
    def test_evaluation_is_a_homomorphism(self, a, b, v):
        assert (a * b)(v) == a(v) * b(v)
        assert (a + b)(v) == a(v) + b(v)
        assert (a - b)(v) == a(v) - b(v)

    @given(polys(Q), polys(Q))
    def test_field_division_identity(self, a, b):
        if not b:
            return
        q, r = a.divmod_field(b)
        assert q * b + r == a
        assert r.degree < b.degree

    @given(polys(Z), polys(Z))
    def test_exquo_recovers_factor(self, a, b):
        if not b:
            return
        assert (a * b).exquo(b) == a


class TestGcd:
    def test_integer_example(self):
        # 2x^2-2 = 2(x-1)(x+1), 4x+4 = 4(x+1): common part 2(x+1)
        g = poly_gcd(zp(-2, 0, 2), zp(4, 4))
        assert g == zp(2, 2)
        assert zp(-2, 0, 2).exquo(g) == zp(-1, 1)
        assert zp(4, 4).exquo(g) == zp(2)

    def test_gcd_with_zero(self):
        assert poly_gcd(zp(-3, -6), ZX.zero) == zp(3, 6)
        assert poly_gcd(qp(2, 4), QX.zero) == qp(Fraction(1, 2), 1)

    def test_coprime_over_q(self):
        assert poly_gcd(qp(0, 1), qp(1, 1)) == QX.one
        g, s, t = extended_gcd_field(qp(0, 1), qp(1, 1))
        assert s * qp(0, 1) + t * qp(1, 1) == g == QX.one

    def test_both_zero_raises(self):
        with pytest.raises(ValueError):
            poly_gcd(ZX.zero, ZX.zero)
        with pytest.raises(ValueError):
            extended_gcd_field(QX.zero, QX.zero)

    @given(polys(Z), polys(Z), polys(Z, max_deg=2))
    def test_gcd_divides_and_scales(self, a, b, c):
        if not a and not b:
            return
        g = poly_gcd(a, b)
        assert g.divides(a) and g.divides(b)
        assert g.lc > 0
        if c:
            gc = poly_gcd(a * c, b * c)
            assert gc == (c.normalize() * g).normalize()

    @given(polys(Z), polys(Z))
    def test_common_divisors_divide_gcd(self, a, b):
        if not a or not b:
            return
        g = poly_gcd(a, b)
        # every common factor built from a shared factor divides the gcd
        shared = poly_gcd(a * zp(1, 1), b * zp(1, 1))
        assert g.divides(shared) and (g * zp(1, 1)).normalize() == shared

    @given(polys(Q), polys(Q))
    def test_gcd_monic_over_q(self, a, b):
        if not a and not b:
            return
        assert poly_gcd(a, b).lc == 1


class TestContent:
    def test_examples(self):
        assert content_primitive(zp(6, 4)) == (2, zp(3, 2))
        assert content_primitive(zp(-1, 0, 1)) == (1, zp(-1, 0, 1))
        assert content_primitive(zp(0, -6)) == (6, zp(0, -1))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            content_primitive(ZX.zero)

    @given(polys(Z), polys(Z))
    def test_gauss_lemma(self, a, b):
        if not a or not b:
            return
        assert content_primitive(a * b)[0] == content_primitive(a)[0] * content_primitive(b)[0]


class TestExtendedGcd:
    def test_examples(self):
        x = qp(0, 1)
        assert extended_gcd_field(x, qp(1, 1)) == (QX.one, qp(-1), qp(1))
        assert extended_gcd_field(qp(0, 0, 1), x) == (x, QX.zero, QX.one)
        p = qp(3, 0, 2)
        assert extended_gcd_field(p, p) == (p.monic(), QX.zero, qp(Fraction(1, 2)))

    @given(polys(Q), polys(Q))
    def test_bezout(self, a, b):
        if not a and not b:
            return
        g, s, t = extended_gcd_field(a, b)
        assert s * a + t * b == g
        assert g.lc == 1
