import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from spincoulomb.errors import ConvergenceError, DomainError, NoBoundStateError, SupercriticalError
from spincoulomb.radial import (
    count_nodes,
    effective_lambda,
    fd_radial_oracle,
    general_type1_ode,
    hydrogen_ground_observables,
    nonrel_energy,
    nonrel_energy_hydrogen,
    nonrel_energy_type1,
    nonrel_energy_type2,
    omega_type2,
    radial_wavefunction,
)

# lowest level of the truncated c(r) = c1 + c2 r^3 problem on [0, 40], l = 0, c1 = 0.5
GENERAL_BASELINE = {0.0: -0.670921689938, 0.01: -0.673274209332}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hydrogen_closed_form(n):
    line = nonrel_energy_hydrogen(n - 1, 0)
    assert line.E_closed == -1 / (2 * n * n)
    assert line.n == n


def test_hydrogen_examples():
    assert nonrel_energy_hydrogen(0, 0).E_closed == -0.5
    assert nonrel_energy_hydrogen(1, 0).E_closed == -0.125
    assert nonrel_energy_hydrogen(0, 1).E_closed == -0.125


def test_repulsive_has_no_bound_state():
    with pytest.raises(NoBoundStateError):
        nonrel_energy_hydrogen(0, 0, qkappa=1.0)
    with pytest.raises(NoBoundStateError):
        fd_radial_oracle(0.0, qkappa3=0.5)


def test_negative_node_count():
    with pytest.raises(DomainError):
        nonrel_energy(-1, 0.0)


def test_oracle_hydrogen_ladder():
    o = fd_radial_oracle(0.0)
    want = [-0.5, -0.125, -1 / 18, -0.03125]
    assert np.allclose(o.eigenvalues, want, rtol=1e-4, atol=0)
    assert o.richardson_gap < 1e-3


def test_oracle_l1():
    o = fd_radial_oracle(1.0)
    assert o.eigenvalues[0] == pytest.approx(-0.125, rel=1e-4)


def test_oracle_type2_example():
    lam = (-1 + math.sqrt(15)) / 2
    assert lam == pytest.approx(1.4365, abs=1e-4)
    o = fd_radial_oracle(lam)
    for N in range(4):
        assert o.eigenvalues[N] == pytest.approx(nonrel_energy(N, lam), rel=1e-4)


def test_oracle_coarse_grid_rejected():
    with pytest.raises(ConvergenceError):
        fd_radial_oracle(0.0, n=30, max_gap=1e-6)


def test_oracle_refinement_converges():
    o = fd_radial_oracle(0.0)
    errs = [abs(w[0] + 0.5) for w in o.levels]
    assert errs[0] > errs[1] > errs[2]


def test_type1_reduces_to_hydrogen():
    for N in range(3):
        for l in range(3):
            assert nonrel_energy_type1(N, l, 0.0).E_closed == pytest.approx(
                nonrel_energy_hydrogen(N, l).E_closed, rel=1e-15
            )


def test_type1_s_wave_unit_coupling_is_supercritical():
    # lambda (lambda + 1) = 1 - sqrt(2) < -1/4, so the root is complex
    assert 5 - 4 * math.sqrt(2) < 0
    with pytest.raises(SupercriticalError):
        nonrel_energy_type1(0, 0, 1.0)


def test_type1_l1_c2_matches_oracle():
    line = nonrel_energy_type1(1, 1, 2.0)
    o = fd_radial_oracle(line.extra["lambda"])
    assert o.eigenvalues[1] == pytest.approx(line.E_closed, rel=1e-4)


def test_type2_examples():
    assert omega_type2(1, "A", 1.0) == 3.5
    line = nonrel_energy_type2(0, 1, "A", 1.0)
    assert line.extra["lambda"] == pytest.approx((-1 + math.sqrt(15)) / 2, abs=1e-15)
    assert omega_type2(1, "B", 1.0) == 0.5
    assert omega_type2(1, "B", 1.0) == pytest.approx(0.5 * ((1 - 2) ** 2 + 1 - 1))


def test_type2_case_b_s_wave():
    with pytest.raises(DomainError):
        nonrel_energy_type2(0, 0, "B", 1.0)


@pytest.mark.parametrize("l", range(4))
@pytest.mark.parametrize("case", ["A", "B"])
def test_type2_reduces_to_hydrogen(l, case):
    if case == "B" and l == 0:
        return
    assert nonrel_energy_type2(1, l, case, 0.0).E_closed == pytest.approx(
        nonrel_energy_hydrogen(1, l).E_closed, rel=1e-15
    )


@given(st.integers(0, 8), st.sampled_from(["A", "B"]), st.floats(-20, 20))
def test_omega_non_negative(l, case, k):
    if case == "B" and l == 0:
        return
    om = omega_type2(l, case, k)
    assert om >= -1e-12
    if case == "B":
        assert om == pytest.approx(0.5 * ((k - (l + 1)) ** 2 + l * l - 1), abs=1e-9)


@given(st.integers(0, 4), st.floats(0, 3), st.integers(0, 5))
def test_energy_increases_with_node_count(l, c1, N):
    try:
        a = nonrel_energy_type1(N, l, c1).E_closed
    except SupercriticalError:
        return
    b = nonrel_energy_type1(N + 1, l, c1).E_closed
    assert a < b < 0


@pytest.mark.parametrize("N", [0, 1, 2, 3])
@pytest.mark.parametrize("lam", [0.0, 1.0, (-1 + math.sqrt(15)) / 2])
def test_wavefunction_nodes(N, lam):
    E = nonrel_energy(N, lam)
    R = radial_wavefunction(N, lam, 2 * E)
    assert count_nodes(R) == N
    s = math.sqrt(-2 * E)
    peak = np.abs(R(np.linspace(0.01, 40 / s, 400))).max()
    assert abs(R(np.array([80 / s]))[0]) < 1e-20 * peak


@pytest.mark.parametrize("N,lam", [(1, 0.0), (2, 1.0), (2, 0.7)])
def test_wavefunction_vs_scipy(N, lam):
    E = nonrel_energy(N, lam)
    s = math.sqrt(-2 * E)
    r = np.linspace(0.1, 20, 15)
    want = r**lam * np.exp(-s * r) * special.hyp1f1(-N, 2 * (lam + 1), 2 * s * r)
    assert np.allclose(radial_wavefunction(N, lam, 2 * E)(r), want, rtol=1e-12, atol=1e-300)


def test_wavefunction_inconsistent_energy():
    with pytest.raises(DomainError):
        radial_wavefunction(0, 0.0, -0.9)
    with pytest.raises(DomainError):
        radial_wavefunction(0, 0.0, 0.1)


def test_ground_state_normalization_constant():
    s = 1.0
    R = radial_wavefunction(0, 0.0, -1.0)
    C1 = math.sqrt(4 * s**3)
    val, _ = integrate.quad(lambda r: (C1 * R(np.array([r]))[0]) ** 2 * r * r, 0, 100, epsabs=0, epsrel=1e-12)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_ground_observables():
    g = hydrogen_ground_observables()
    assert abs(g.mean_r - 1.5) < 1e-8
    assert max(abs(g.mean_x), abs(g.mean_y), abs(g.mean_z)) < 1e-10
    assert abs(g.C1 - 2.0) < 1e-12
    assert abs(g.C1_numeric - g.C1) < 1e-12


@pytest.mark.parametrize("M,e", [(2.0, 1.0), (1.0, 0.5)])
def test_ground_mean_r_scaling(M, e):
    assert hydrogen_ground_observables(M, e).mean_r == pytest.approx(1.5 / (M * e * e), rel=1e-10)


def test_general_ode_reductions():
    assert general_type1_ode(0, 0.0, 0.0).energy == pytest.approx(-0.5, rel=1e-4)
    for l, c1 in ((0, 0.5), (1, 1.0)):
        got = general_type1_ode(l, c1, 0.0).energy
        assert got == pytest.approx(nonrel_energy_type1(0, l, c1).E_closed, rel=1e-4)


@pytest.mark.parametrize("c2", sorted(GENERAL_BASELINE))
def test_general_ode_baseline(c2):
    res = general_type1_ode(0, 0.5, c2)
    assert not res.flagged
    assert res.energy == pytest.approx(GENERAL_BASELINE[c2], rel=1e-9)


def test_general_ode_shift_is_small():
    shift = GENERAL_BASELINE[0.01] - GENERAL_BASELINE[0.0]
    assert -1e-2 < shift < 0


def test_general_ode_unit_coupling_supercritical():
    with pytest.raises(SupercriticalError):
        general_type1_ode(0, 1.0, 0.01)


def test_general_ode_flags_unbounded_potential():
    res = general_type1_ode(0, 0.5, 1.0)
    assert res.flagged and res.energy is None and res.reason


def test_effective_lambda():
    assert effective_lambda(2.0) == pytest.approx(1.0)
    assert effective_lambda(-0.25) == pytest.approx(-0.5)
    with pytest.raises(SupercriticalError):
        effective_lambda(-0.3)
