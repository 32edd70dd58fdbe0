import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spincoulomb.angular import (
    ETA_BRANCHES,
    coupled_harmonic,
    eta_eigen,
    eta_eigen_residual,
    eta_eigenfunction,
    eta_matrix,
    eta_pm2_normalization,
    harmonic_residuals,
    lambda_hat_eigen,
    lambda_hat_matrix,
    lambda_hat_r,
    lambda_linear_residual,
    ls_eigen,
    ls_residual,
    s_r_residual,
    sigma_r,
    sigma_r_intertwine,
)
from spincoulomb.errors import DomainError, SupercriticalError
from spincoulomb.specfun import spherical_harmonic

BRANCHES = [b for b in ETA_BRANCHES if b != "phi4p-lead-m"]
EXPECTED_EV = {"phi1": 2, "phi2": 2, "phi1p": -2, "phi2p": -2, "phi3": 0, "phi3p": 0, "phi4": 0, "phi4p": 0}


def _lm(lmax):
    return [(l, m) for l in range(lmax + 1) for m in range(-l - 1, l + 1)]


def test_a_variant_s_wave():
    v = coupled_harmonic(0, 0, "A")(0.8, 0.3)
    assert v[0] == pytest.approx(spherical_harmonic(0, 0, 0.8, 0.3))
    assert v[1] == 0


def test_a_variant_l1_m0():
    v = coupled_harmonic(1, 0, "A")(1.0, 1.0)
    want = np.array([math.sqrt(2) * spherical_harmonic(1, 0, 1.0, 1.0), spherical_harmonic(1, 1, 1.0, 1.0)]) / math.sqrt(3)
    assert np.allclose(v, want, atol=1e-15)


@pytest.mark.parametrize("l,m,variant", [(0, 1, "A"), (1, -3, "A"), (0, 0, "B"), (2, 2, "B"), (1, 0, "C")])
def test_coupled_harmonic_domain(l, m, variant):
    with pytest.raises(DomainError):
        coupled_harmonic(l, m, variant)


@pytest.mark.parametrize(
    "l,m,variant",
    [(l, m, "A") for l in range(4) for m in range(-l - 1, l + 1)]
    + [(l, m, "B") for l in range(1, 4) for m in range(-l, l)],
)
def test_harmonic_eigen_equations(l, m, variant):
    res = harmonic_residuals(coupled_harmonic(l, m, variant))
    assert res["l2"] < 1e-6
    assert res["jz"] < 1e-6
    assert res["norm"] < 1e-10


@pytest.mark.parametrize("l,m", _lm(5))
def test_sigma_r_intertwining(l, m):
    assert sigma_r_intertwine(l, m) < 1e-10


@pytest.mark.parametrize("l,m", _lm(3))
def test_s_r_eigenfunctions(l, m):
    res = s_r_residual(l, m)
    assert res[0.5] < 1e-10 and res[-0.5] < 1e-10


@given(st.floats(0, math.pi), st.floats(-7, 7))
def test_sigma_r_squares_to_identity(th, ph):
    s = sigma_r(th, ph)
    assert np.allclose(s @ s, np.eye(2), atol=1e-14)


@pytest.mark.parametrize("l,case,W", [(1, "A", 0.5), (0, "A", 0.0), (2, "B", -1.5), (3, "A", 1.5), (1, "B", -1.0)])
def test_ls_eigen(l, case, W):
    assert ls_eigen(l, case) == W


def test_ls_case_b_s_wave_rejected():
    with pytest.raises(DomainError):
        ls_eigen(0, "B")


@pytest.mark.parametrize(
    "l,m,case", [(l, m, "A") for l in range(3) for m in range(-l - 1, l + 1)] + [(l, m, "B") for l in (1, 2) for m in range(-l, l)]
)
def test_ls_operator_application(l, m, case):
    assert ls_residual(l, m, case) < 1e-8


@pytest.mark.parametrize("l", range(5))
def test_lambda_decoupled(l):
    e = lambda_hat_eigen(l, 0.0)
    assert e.lam_minus == pytest.approx(l * (l + 1), abs=1e-12)
    assert e.lam_plus == pytest.approx((l + 1) * (l + 2), abs=1e-12)
    assert math.sin(2 * e.chi) == pytest.approx(1.0, abs=1e-12)
    assert e.lam == pytest.approx(l, abs=1e-12)


def test_lambda_l1_c2():
    e = lambda_hat_eigen(1, 2.0)
    assert e.lam_minus == pytest.approx(4 - math.sqrt(8), abs=1e-12)
    assert e.lam_plus == pytest.approx(4 + math.sqrt(8), abs=1e-12)
    assert e.lam_minus == pytest.approx(1.17157, abs=1e-5)


def test_sin_2chi_l0_c1():
    assert math.sin(2 * lambda_hat_eigen(0, 1.0).chi) == pytest.approx(1 / math.sqrt(2), abs=1e-14)


def test_supercritical_lambda():
    e = lambda_hat_eigen(0, 2.0)
    assert 1 + 4 * e.lam_minus < 0
    with pytest.raises(SupercriticalError):
        e.lam


@given(st.integers(0, 6), st.floats(-10, 10))
def test_lambda_closed_vs_diagonalization(l, c1):
    e = lambda_hat_eigen(l, c1)
    for sign in (-1, 1):
        w = np.linalg.eigvalsh(lambda_hat_matrix(l, c1, sign))
        assert abs(w[0] - e.lam_minus) < 1e-12 * max(1, abs(w[0]))
        assert abs(w[1] - e.lam_plus) < 1e-12 * max(1, abs(w[1]))
    assert e.lam_minus <= e.lam_plus
    assert math.sin(2 * e.chi) == pytest.approx(1 / math.sqrt(1 + c1**2 / (l + 1) ** 2), abs=1e-12)
    assert e.a_l**2 + e.b_l**2 == pytest.approx(1.0, abs=1e-15)
    assert lambda_linear_residual(e) < 1e-12 * max(1, abs(c1), l * l)


@given(st.integers(0, 4), st.floats(0, 3))
def test_lambda_root_solves_quadratic(l, c1):
    e = lambda_hat_eigen(l, c1)
    if 1 + 4 * e.lam_minus < 0:
        return
    assert e.lam * (e.lam + 1) == pytest.approx(e.lam_minus, abs=1e-12)
    assert e.lam >= -0.5


def test_lambda_r_reduces_when_c2_zero():
    r = np.linspace(0.1, 5, 20)
    Lam, a, b, drift = lambda_hat_r(2, 0.7, 0.0, r)
    e = lambda_hat_eigen(2, 0.7)
    assert np.array_equal(Lam, np.full(20, e.lam_minus))
    assert np.allclose(a, e.a_l, atol=0) and np.allclose(b, e.b_l, atol=0)
    assert np.all(drift == 0)


def test_lambda_r_example():
    Lam, a, b, _ = lambda_hat_r(0, 0.0, 1.0, 1.0)
    assert Lam == pytest.approx(1 - math.sqrt(2), abs=1e-15)
    assert Lam == pytest.approx(np.linalg.eigvalsh(lambda_hat_matrix(0, 1.0))[0], abs=1e-14)


def test_lambda_r_unit_coefficients():
    r = np.geomspace(0.05, 20, 20)
    _, a, b, _ = lambda_hat_r(1, 0.4, 0.3, r)
    assert np.allclose(a**2 + b**2, 1.0, atol=1e-15)


def test_lambda_r_drift_is_chi_prime_squared():
    l, c1, c2, r, h = 1, 0.4, 0.3, 1.3, 1e-5
    chi = lambda rr: math.atan2(*lambda_hat_r(l, c1, c2, rr)[1:3][::-1])
    dchi = (chi(r + h) - chi(r - h)) / (2 * h)
    assert lambda_hat_r(l, c1, c2, r)[3] == pytest.approx(dchi**2, rel=1e-7)


def test_eta_z_direction():
    eta = eta_matrix([0, 0, 1])
    w = np.linalg.eigvalsh(eta @ eta)
    assert np.allclose(np.sort(w), [0, 0, 0, 0, 4, 4, 4, 4], atol=1e-12)


def test_eta_eigen_random_directions(rng):
    want = np.array([-2, -2, 0, 0, 0, 0, 2, 2])
    for d in rng.normal(size=(20, 3)):
        e = eta_eigen(d)
        assert np.abs(e.eigenvalues - want).max() < 1e-12
        assert e.j_commutator < 1e-12
        assert e.hermitian_defect == 0
        ranks = {k: round(np.trace(P).real) for k, P in e.projectors.items()}
        assert ranks == {2: 2, -2: 2, 0: 4}
        total = sum(e.projectors.values())
        assert np.allclose(total, np.eye(8), atol=1e-12)
        assert abs(np.trace(eta_matrix(d))) < 1e-14


def test_eta_zero_direction():
    with pytest.raises(DomainError):
        eta_matrix([0, 0, 0])


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_eta_projectors_direction_covariant(v):
    e = eta_eigen(v)
    eta = eta_matrix(v)
    for ev, P in e.projectors.items():
        assert np.allclose(eta @ P, ev * P, atol=1e-10)


@pytest.mark.parametrize("branch", BRANCHES)
@pytest.mark.parametrize("l,m", _lm(2))
def test_eta_eigenfunctions(branch, l, m):
    fn = eta_eigenfunction(l, m, branch)
    assert fn.eigenvalue == EXPECTED_EV[branch]
    res, scale = eta_eigen_residual(fn)
    assert res < 1e-8 * scale


def test_eta_phi4p_lead_m_variant_fails():
    res, scale = eta_eigen_residual(eta_eigenfunction(1, 0, "phi4p-lead-m"))
    assert res > 1e-2 * scale


def test_eta_bad_branch():
    with pytest.raises(DomainError):
        eta_eigenfunction(1, 0, "phi5")
    with pytest.raises(DomainError):
        eta_eigenfunction(1, 3, "phi1")


@pytest.mark.parametrize("l,m", [(0, 0), (1, -1), (2, 1)])
def test_eta_pm2_normalization_stated(l, m):
    # closed form stated for the eta = +-2 coefficient weight
    got = eta_pm2_normalization(l, m)
    assert abs(got - (l + m + 2) / (3 * l - m + 5)) < 1e-10


@pytest.mark.parametrize("eta", [2, -2])
@pytest.mark.parametrize("l,m", [(0, 0), (1, 0), (1, -1), (2, 1), (3, -2)])
def test_eta_pm2_normalization_quadrature(l, m, eta):
    got = eta_pm2_normalization(l, m, a1=0.8, a1p=-0.3 + 0.2j, eta=eta)
    assert abs(got - (l + m + 2) / (4 * (2 * l + 3))) < 1e-10
