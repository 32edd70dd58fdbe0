import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from spincoulomb.angular import sphere_quadrature
from spincoulomb.errors import DomainError
from spincoulomb.specfun import (
    KummerParams,
    assoc_legendre,
    kummer_1f1,
    kummer_coefficients,
    spherical_harmonic,
    verify_recursions,
)

LM = [(l, m) for l in range(6) for m in range(-l, l + 1)]


@pytest.mark.parametrize(
    "a,c,x,want",
    [(0, 2, 5, 1.0), (3, 3, 1.5, math.exp(1.5)), (-1, 2, 0.8, 0.6)],
)
def test_kummer_examples(a, c, x, want):
    assert kummer_1f1(KummerParams(a, c, x)) == pytest.approx(want, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("x", [-30.0, -2.5, 0.0, 0.3, 4.0, 40.0])
@pytest.mark.parametrize("a,c", [(0.5, 1.5), (-2.7, 3.1), (1.3, 0.4), (-3, 4.5), (2.0, 2.5)])
def test_kummer_vs_scipy(a, c, x):
    want = special.hyp1f1(a, c, x)
    assert kummer_1f1(a, c, x) == pytest.approx(want, rel=1e-11, abs=1e-300)


def test_kummer_errors():
    with pytest.raises(DomainError):
        kummer_1f1(1.0, -2.0, 0.5)
    with pytest.raises(DomainError):
        kummer_1f1(1.0, 0.0, 0.5)
    with pytest.raises(DomainError):
        kummer_1f1(1.0, 2.0, 701.0)


@pytest.mark.parametrize("N", [0, 1, 2, 5, 9])
def test_truncated_coefficient_count(N):
    coef = kummer_coefficients(-N, 2.5)
    assert len(coef) == N + 1 and np.all(coef != 0)
    assert KummerParams(-N, 2.5, 1.0).truncated
    assert not KummerParams(-N - 0.5, 2.5, 1.0).truncated


@given(st.floats(0.1, 4.0), st.floats(0.3, 5.0), st.floats(-5.0, 5.0))
def test_kummer_derivative(a, c, x):
    h = 1e-5
    fd = (kummer_1f1(a, c, x + h) - kummer_1f1(a, c, x - h)) / (2 * h)
    want = a / c * kummer_1f1(a + 1, c + 1, x)
    assert abs(fd - want) <= 1e-8 * max(1.0, abs(want))


def test_ylm_examples():
    assert spherical_harmonic(0, 0, 0.4, 1.0) == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert spherical_harmonic(1, 0, math.pi / 3, 0.0) == pytest.approx(math.sqrt(3 / (4 * math.pi)) / 2)
    want11 = -math.sqrt(3 / (8 * math.pi)) * math.sin(0.7) * np.exp(0.2j)
    assert spherical_harmonic(1, 1, 0.7, 0.2) == pytest.approx(want11)


@pytest.mark.parametrize("l,m", LM)
def test_ylm_vs_scipy(l, m):
    th = np.linspace(0.05, math.pi - 0.05, 9)
    ph = np.linspace(0.0, 2 * math.pi, 9)
    got = spherical_harmonic(l, m, th, ph)
    want = special.sph_harm_y(l, m, th, ph)
    assert np.allclose(got, want, atol=1e-13, rtol=0)


@pytest.mark.parametrize("l,m", [(l, m) for l in range(6) for m in range(l + 1)])
def test_legendre_vs_scipy(l, m):
    z = np.linspace(-0.99, 0.99, 11)
    assert np.allclose(assoc_legendre(l, m, z), special.lpmv(m, l, z), atol=1e-12)


def test_ylm_domain():
    with pytest.raises(DomainError):
        spherical_harmonic(1, 2, 0.3, 0.3)
    with pytest.raises(DomainError):
        verify_recursions(2, -3, 0.3, 0.3)


def test_y21_normalized():
    th, ph, wt = sphere_quadrature(40, 80)
    y = spherical_harmonic(2, 1, th, ph)
    assert abs(np.sum(wt * np.abs(y) ** 2) - 1) < 1e-10


def test_orthonormality_l4():
    th, ph, wt = sphere_quadrature(30, 60)
    idx = [(l, m) for l in range(5) for m in range(-l, l + 1)]
    Y = np.array([spherical_harmonic(l, m, th, ph).ravel() for l, m in idx])
    gram = (Y.conj() * wt.ravel()) @ Y.T
    assert np.abs(gram - np.eye(len(idx))).max() < 1e-10


def test_recursions_l1_m0():
    res = verify_recursions(1, 0, 1.1, 0.7)
    for k in ("cos", "sin_plus", "sin_minus"):
        assert res[k] < 1e-10


def test_recursions_l0_cos_degenerates():
    th = 0.9
    from spincoulomb.specfun import recur_a

    assert recur_a(-1, 0) == 0.0
    lhs = math.cos(th) * spherical_harmonic(0, 0, th, 0.0)
    assert lhs == pytest.approx(recur_a(0, 0) * spherical_harmonic(1, 0, th, 0.0), abs=1e-15)
    assert verify_recursions(0, 0, th, 0.0)["cos"] < 1e-14


def test_bas3_example():
    r = math.sqrt(3.0)
    res = verify_recursions(2, 1, math.acos(1 / r), math.pi / 4, r=r)
    assert res["bas3"] < 1e-6


@pytest.mark.parametrize("l,m", LM)
def test_all_recursions(l, m):
    res = verify_recursions(l, m, 1.0, 0.4, r=1.3)
    for k in ("cos", "sin_plus", "sin_minus"):
        assert res[k] < 1e-10, k
    for k in ("bas1", "bas2", "bas3"):
        assert res[k] < 1e-6, k


@given(st.integers(0, 6), st.data(), st.floats(0.1, 3.0), st.floats(-3, 3))
def test_conjugation_symmetry(l, data, th, ph):
    m = data.draw(st.integers(-l, l))
    lhs = spherical_harmonic(l, -m, th, ph)
    rhs = (-1) ** m * np.conj(spherical_harmonic(l, m, th, ph))
    assert abs(lhs - rhs) < 1e-13
