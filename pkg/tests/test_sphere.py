import time

from hypothesis import given, settings, strategies as st

from polyshift.matrix import Matrix, det
from polyshift.sphere import (
    SPHERE,
    TRI,
    CounterexampleReport,
    QuotientElement,
    TriPoly,
    counterexample_matrix,
    reduce_mod_sphere,
    skew_determinant,
    verify_counterexample,
)

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 4))
tripolys = st.dictionaries(exps, st.integers(-4, 4), max_size=5).map(TriPoly)


def test_defining_relation():
    assert reduce_mod_sphere(TRI("x^2 + y^2 + z^2")) == SPHERE(1)


def test_z_cubed():
    assert reduce_mod_sphere(TRI("z^3")).value == TRI("z - x^2*z - y^2*z")


def test_reduced_is_fixed():
    p = TRI("x^3*y - 2*z + x*y*z")
    assert reduce_mod_sphere(p).value == p


def test_parse_in_quotient():
    assert SPHERE("x*y - z^2").value == TRI("x*y + x^2 + y^2 - 1")


def test_element_arithmetic():
    z = SPHERE("z")
    assert z * z == 1 - SPHERE("x^2 + y^2")
    assert z * z * z - z == -SPHERE("x^2*z + y^2*z")
    assert QuotientElement(TRI("z^2")) + SPHERE("x^2") + SPHERE("y^2") == 1


@settings(max_examples=80, deadline=None)
@given(tripolys, tripolys)
def test_reduction_is_a_ring_homomorphism(p, q):
    rp, rq = reduce_mod_sphere(p), reduce_mod_sphere(q)
    assert reduce_mod_sphere(p + q) == rp + rq
    assert reduce_mod_sphere(p * q) == rp * rq
    assert reduce_mod_sphere(rp.value) == rp
    assert rp.value.z_degree() <= 1


@settings(max_examples=40, deadline=None)
@given(tripolys)
def test_kernel_contains_multiples_of_relation(p):
    rel = TRI("x^2 + y^2 + z^2 - 1")
    assert not reduce_mod_sphere(p * rel)


def test_skew_matrix():
    a = counterexample_matrix(TRI)
    assert a.T == -a
    assert skew_determinant() == TRI.zero
    assert det(counterexample_matrix(SPHERE)) == SPHERE.zero


def test_counterexample_report():
    start = time.perf_counter()
    report = verify_counterexample()
    elapsed = time.perf_counter() - start
    assert report.ok
    assert all(getattr(report, name) for name, _ in CounterexampleReport.CHECKS)
    assert elapsed < 1.0
    alpha = Matrix(SPHERE, [["x", "y", "z"]])
    assert report.phi_a4 == Matrix.identity(SPHERE, 3) - alpha.T * alpha
    assert [str(c) for c in report.zeta.coeffs] == ["1", "-2", "1"]
    assert report.alpha_times_phi_a4.is_zero() and report.trace == 2
    assert report.to_dict()["ok"] is True


def test_cubic_relation_fails_without_the_sign():
    a = counterexample_matrix(TRI)
    q = TRI("x^2 + y^2 + z^2")
    assert a * a * a != a * q
