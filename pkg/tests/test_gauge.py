import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spincoulomb.errors import ConstraintViolation, DomainError, NoSolutionError
from spincoulomb.gauge import (
    PotentialConfig,
    classify_solution,
    eval_potentials,
    fd_jacobian,
    fd_step,
    field_strengths,
    maxwell_check,
    standard_sample_points,
    ym_residuals,
)
from spincoulomb.spin import rdot

POINTS = standard_sample_points(64)

CASE_I = PotentialConfig.type1(kappa1=1.0, kappa2=0.3, kappa3=1.0)
CASE_IV = PotentialConfig.type2(k=1.0, kappa1=1.0, kappa3=1.0)


@pytest.mark.parametrize(
    "g,k,label",
    [(0, 0, "I"), (0, 1, "no-solution"), (2.0, 0, "III"), (1, 1, "IV"), (4.0, 0.25, "IV")],
)
def test_classify(g, k, label):
    assert classify_solution(g, k).label == label


def test_case_iv_constraint_residual():
    with pytest.raises(ConstraintViolation) as exc:
        classify_solution(1.0, 0.5)
    assert exc.value.residual == pytest.approx(-0.5)


def test_case_iv_profile():
    p = PotentialConfig.type2(k=1.0, kappa1=2.0, kappa3=0.0).profiles(4.0)
    assert p.f1 == pytest.approx(0.5)


def test_kappa2_only_in_case_i():
    with pytest.raises(DomainError):
        PotentialConfig(g=1, k=1, kappa1=1, kappa2=0.3).solution_case()


def test_no_solution_case_errors():
    cfg = PotentialConfig(g=0.0, k=1.0, kappa3=1.0)
    with pytest.raises(NoSolutionError):
        eval_potentials(cfg, [0, 0, 1])
    with pytest.raises(NoSolutionError):
        ym_residuals(cfg, [0, 0, 1])


@pytest.mark.parametrize("fn", [eval_potentials, field_strengths, ym_residuals])
def test_origin_rejected(fn):
    with pytest.raises(DomainError):
        fn(CASE_IV, [0.0, 0.0, 0.0])


def test_potentials_at_z_axis():
    cfg = PotentialConfig.type2(k=1.0, kappa1=1.0, kappa3=1.0)
    S = cfg.spin()
    A, phi = eval_potentials(cfg, [0, 0, 1])
    assert np.allclose(A.x, -S.Sy) and np.allclose(A.y, S.Sx) and np.allclose(A.z, 0)
    assert np.allclose(phi, S.Sz + np.eye(2))


def test_spinless_reduction():
    cfg = PotentialConfig(kappa3=2.0)
    x = np.array([1.0, 2.0, 2.0])
    A, phi = eval_potentials(cfg, x)
    assert A.max_abs() == 0
    assert np.allclose(phi, 2.0 / 3.0 * np.eye(2))
    E, B = field_strengths(cfg, x)
    want = 2.0 * x / 27.0
    for i in range(3):
        assert np.allclose(E.comps[i], want[i] * np.eye(2), atol=1e-15)
    assert B.max_abs() == 0


def test_type1_phi_at_x_axis():
    cfg = PotentialConfig.type1(kappa1=1.0, kappa2=0.0, kappa3=0.0)
    _, phi = eval_potentials(cfg, [1.0, 0, 0])
    assert np.allclose(phi, cfg.spin().Sx)


def test_case_iv_b_closed_form():
    x = np.array([0.3, -1.1, 0.8])
    r = np.linalg.norm(x)
    _, B = field_strengths(CASE_IV, x)
    rs = rdot(x, CASE_IV.spin().vec)
    for i in range(3):
        assert np.allclose(B.comps[i], -rs * x[i] / r**4, atol=1e-15)


@pytest.mark.parametrize("s", [0.5, 1.0])
@pytest.mark.parametrize("cfg", [CASE_I, CASE_IV], ids=["I", "IV"])
def test_fields_fd_vs_analytic(cfg, s):
    cfg = cfg.with_spin(s)
    for x in POINTS[:16]:
        Ea, Ba = field_strengths(cfg, x)
        Ef, Bf = field_strengths(cfg, x, method="fd")
        assert (Ea - Ef).max_abs() < 1e-5
        assert (Ba - Bf).max_abs() < 1e-5


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("cfg", [CASE_I, CASE_IV], ids=["I", "IV"])
def test_hermiticity(cfg, s):
    cfg = cfg.with_spin(s)
    for x in POINTS[:10]:
        A, phi = eval_potentials(cfg, x)
        E, B = field_strengths(cfg, x)
        assert A.is_hermitian(1e-14) and np.allclose(phi, phi.conj().T)
        assert E.is_hermitian(1e-10) and B.is_hermitian(1e-10)


@pytest.mark.parametrize("s", [0.5, 1.0])
@pytest.mark.parametrize("cfg", [CASE_I, CASE_IV], ids=["I", "IV"])
def test_ym_analytic(cfg, s):
    cfg = cfg.with_spin(s)
    assert max(ym_residuals(cfg, x).max() for x in POINTS) < 1e-10


@pytest.mark.parametrize("s", [0.5, 1.0])
@pytest.mark.parametrize("cfg", [CASE_I, CASE_IV], ids=["I", "IV"])
def test_ym_fd(cfg, s):
    cfg = cfg.with_spin(s)
    assert max(ym_residuals(cfg, x, method="fd", h=1e-4).max() for x in POINTS[:16]) < 1e-5


def test_ym_pure_coulomb():
    cfg = PotentialConfig(kappa3=1.0)
    assert max(ym_residuals(cfg, x).max() for x in POINTS) < 1e-10


def test_ym_case_iii():
    cfg = PotentialConfig(g=2.0, k=0.0, kappa3=1.5)
    assert max(ym_residuals(cfg, x).max() for x in POINTS[:16]) < 1e-10


def test_ym_negative_control():
    cfg = PotentialConfig(g=1.0, k=0.5, kappa1=1.0, kappa3=1.0, case="IV", strict=False)
    assert max(ym_residuals(cfg, x).max() for x in POINTS) > 1e-2


def test_ym_reversed_sign_fails_case_iv():
    # the opposite self-interaction sign does not close for case IV
    worst = max(ym_residuals(CASE_IV, x, form="reversed").max() for x in POINTS[:8])
    assert worst > 1e-2


def test_div_b_vanishes_by_fd():
    for cfg in (CASE_I, CASE_IV):
        rep = cfg.spin()
        for x in POINTS[:8]:
            J = fd_jacobian(lambda y: field_strengths(cfg, y)[1], x, fd_step(np.linalg.norm(x)))
            div = J[0].x + J[1].y + J[2].z
            assert np.abs(div).max() < 1e-8


def test_maxwell_examples(rng):
    assert max(maxwell_check(1.0, [1, 1, 1])) < 1e-6
    assert maxwell_check(0.0, [1, 1, 1]) == (0.0, 0.0)
    for x in rng.normal(size=(10, 3)):
        assert max(maxwell_check(3.7, x)) < 1e-6


def test_sample_points_deterministic():
    pts = standard_sample_points(64)
    assert np.array_equal(pts, POINTS)
    r = np.linalg.norm(pts, axis=1)
    assert r.min() >= 0.5 and r.max() <= 5.0
    th = np.arccos(pts[:, 2] / r)
    assert th.min() >= 0.05 and th.max() <= np.pi - 0.05


@given(
    st.lists(st.floats(-4, 4), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 0.3),
    st.floats(0.2, 3.0),
    st.floats(-2, 2),
    st.sampled_from([0.5, 1.0, 1.5]),
)
def test_ym_case_iv_any_k(v, k, kappa1, s):
    cfg = PotentialConfig.type2(k=k, kappa1=kappa1, kappa3=0.7).with_spin(s)
    res = ym_residuals(cfg, v)
    assert res.max() < 1e-9 * max(1.0, k**3, abs(kappa1) ** 2)


@given(
    st.lists(st.floats(-4, 4), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 0.3),
    st.floats(-2, 2),
    st.floats(-2, 2),
)
def test_ym_case_i_any_kappa(v, kappa1, kappa2):
    cfg = PotentialConfig.type1(kappa1=kappa1, kappa2=kappa2, kappa3=1.0)
    scale = 1 + abs(kappa1) / np.linalg.norm(v) ** 5
    assert ym_residuals(cfg, v).max() < 1e-10 * scale
