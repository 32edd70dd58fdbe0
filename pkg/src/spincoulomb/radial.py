"""Non-relativistic bound states: closed forms, radial functions and grid oracles.

All energies are for ``H = p^2/2M + V`` with the spin structure folded into an
effective centrifugal constant ``Lambda = lambda (lambda + 1)``.  The grid
oracle never looks at the closed forms; it only sees ``Lambda`` and the
Coulomb strength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.linalg import eigh_tridiagonal

from .angular import lambda_hat_eigen, lambda_hat_r, ls_eigen
from .errors import ConvergenceError, DomainError, NoBoundStateError, SupercriticalError
from .specfun import kummer_1f1

__all__ = [
    "SpectrumLine",
    "OracleResult",
    "GeneralODEResult",
    "GroundObservables",
    "effective_lambda",
    "omega_type2",
    "nonrel_energy",
    "nonrel_energy_hydrogen",
    "nonrel_energy_type1",
    "nonrel_energy_type2",
    "radial_wavefunction",
    "count_nodes",
    "fd_radial_oracle",
    "general_type1_ode",
    "hydrogen_ground_observables",
]

GRID_RMAX = 200.0
GRID_POINTS = 8000


@dataclass
class SpectrumLine:
    family: str
    N: int
    l: int
    couplings: dict = field(default_factory=dict)
    E_closed: float = math.nan
    E_oracle: float | None = None
    rel_discrepancy: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.N + self.l + 1

    def attach_oracle(self, E_oracle: float) -> "SpectrumLine":
        self.E_oracle = float(E_oracle)
        self.rel_discrepancy = abs(self.E_oracle - self.E_closed) / abs(self.E_closed)
        return self


def effective_lambda(Lambda: float) -> float:
    """Non-negative-branch root of ``lambda (lambda + 1) = Lambda``."""
    disc = 1 + 4 * Lambda
    if disc < 0:
        raise SupercriticalError(f"1 + 4 Lambda = {disc:.6g} < 0: effective angular momentum is complex")
    return (-1 + math.sqrt(disc)) / 2


def nonrel_energy(N: int, lam: float, M: float = 1.0, qkappa: float = -1.0, hbar: float = 1.0) -> float:
    if N < 0:
        raise DomainError("node count N must be non-negative")
    if qkappa >= 0:
        raise NoBoundStateError("repulsive Coulomb coupling has no bound states")
    return -M * qkappa**2 / (2 * hbar**2 * (N + lam + 1) ** 2)


def nonrel_energy_hydrogen(N: int, l: int, M: float = 1.0, qkappa: float = -1.0, hbar: float = 1.0) -> SpectrumLine:
    E = nonrel_energy(N, l, M, qkappa, hbar)
    return SpectrumLine("hydrogen", N, l, {"M": M, "qkappa": qkappa}, E, extra={"lambda": float(l)})


def nonrel_energy_type1(
    N: int, l: int, c1: float, M: float = 1.0, qkappa3: float = -1.0, hbar: float = 1.0
) -> SpectrumLine:
    """Spectrum with ``l -> lambda`` where ``lambda (lambda+1) = Lambda_-(l, c1)``."""
    eig = lambda_hat_eigen(l, c1)
    lam = effective_lambda(eig.lam_minus)
    E = nonrel_energy(N, lam, M, qkappa3, hbar)
    return SpectrumLine(
        "type1", N, l, {"c1": c1, "M": M, "qkappa3": qkappa3}, E,
        extra={"Lambda": eig.lam_minus, "lambda": lam},
    )


def omega_type2(l: int, case: str, k: float) -> float:
    W = ls_eigen(l, case)
    return l * (l + 1) + 2 * k * W + k * k / 2


def nonrel_energy_type2(
    N: int, l: int, case: str, k: float, M: float = 1.0, qkappa3: float = -1.0, hbar: float = 1.0
) -> SpectrumLine:
    omega = omega_type2(l, case, k)
    if omega < 0:
        raise AssertionError(f"Omega = {omega} < 0 contradicts the non-negativity bound")
    lam = effective_lambda(omega)
    E = nonrel_energy(N, lam, M, qkappa3, hbar)
    return SpectrumLine(
        "type2", N, l, {"case": case, "k": k, "M": M, "qkappa3": qkappa3}, E,
        extra={"Omega": omega, "lambda": lam},
    )


def radial_wavefunction(
    N: int, lam: float, eps: float, M: float = 1.0, qkappa3: float = -1.0, hbar: float = 1.0
) -> Callable[[np.ndarray], np.ndarray]:
    """Unnormalised ``R(r) = r^lam e^{-s r} 1F1(lam+1 + M q kappa3/(hbar^2 s); 2(lam+1); 2 s r)``.

    ``eps = 2 M E / hbar^2`` and ``s = sqrt(-eps)``.
    """
    if eps >= 0:
        raise DomainError("bound states need eps < 0")
    s = math.sqrt(-eps)
    a = (lam + 1) + M * qkappa3 / (hbar**2 * s)
    if abs(a + N) > 1e-10:
        raise DomainError(f"first Kummer argument {a:.12g} is not -N = {-N}")
    a = -float(N)
    c = 2 * (lam + 1)

    def R(r):
        r = np.asarray(r, dtype=float)
        poly = np.vectorize(lambda x: kummer_1f1(a, c, x))(2 * s * r)
        return r**lam * np.exp(-s * r) * poly

    return R


def count_nodes(R: Callable, rmax: float = 200.0, points: int = 10_000, rmin: float = 1e-6) -> int:
    """Sign changes of R on a logarithmic scan grid."""
    r = np.geomspace(rmin, rmax, points)
    v = R(r)
    v = v[np.abs(v) > 1e-300]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: np.ndarray
    levels: tuple[np.ndarray, ...]
    spacings: tuple[float, ...]
    richardson_gap: float


def _tridiagonal_levels(V: Callable[[np.ndarray], np.ndarray], M, hbar, rmax, n, n_eig):
    # nodes r_i = i h, u(0) = u(rmax) = 0
    h = rmax / (n + 1)
    r = h * np.arange(1, n + 1)
    t = hbar**2 / (2 * M * h * h)
    d = 2 * t + V(r)
    e = np.full(n - 1, -t)
    w = eigh_tridiagonal(d, e, select="i", select_range=(0, n_eig - 1), eigvals_only=True)
    return h, w


def _extrapolate(V, M, hbar, rmax, n, n_eig, lam0):
    ns = (n, 2 * n + 1, 4 * n + 3)
    hs, levels = [], []
    for nn in ns:
        h, w = _tridiagonal_levels(V, M, hbar, rmax, nn, n_eig)
        hs.append(h)
        levels.append(w)
    # error ~ a h^2 + b h^(2 lam0 + 1) from the r^(lam0+1) behaviour at the origin
    p = 2 * lam0 + 1
    exps = (2.0, 3.0) if abs(p - 2) < 0.1 else (2.0, p)
    A = np.array([[1.0, h ** exps[0], h ** exps[1]] for h in hs])
    E = np.linalg.solve(A, np.vstack(levels))[0]
    gap = float(np.max(np.abs(levels[-1] - E) / np.abs(E)))
    return E, tuple(levels), tuple(hs), gap


def fd_radial_oracle(
    lam_eff: float,
    qkappa3: float = -1.0,
    M: float = 1.0,
    hbar: float = 1.0,
    rmax: float = GRID_RMAX,
    n: int = GRID_POINTS,
    n_eig: int = 4,
    max_gap: float = 5e-2,
) -> OracleResult:
    """Lowest eigenvalues of ``-hbar^2 u''/2M + [hbar^2 L/(2 M r^2) + q kappa3 / r] u = E u``.

    ``L = lam_eff (lam_eff + 1)``.  Three uniform grids (n, 2n+1, 4n+3
    interior nodes) are combined by Richardson extrapolation; the relative
    gap between the finest grid and the extrapolated value must stay below
    ``max_gap``.
    """
    if qkappa3 >= 0:
        raise NoBoundStateError("repulsive Coulomb coupling has no bound states")
    Lam = lam_eff * (lam_eff + 1)
    if 1 + 4 * Lam < 0 or lam_eff < -0.5:
        raise SupercriticalError("effective centrifugal term below -1/4")

    def V(r):
        return hbar**2 * Lam / (2 * M * r * r) + qkappa3 / r

    E, levels, hs, gap = _extrapolate(V, M, hbar, rmax, n, n_eig, lam_eff)
    if gap > max_gap:
        raise ConvergenceError(f"grid not converged: finest-vs-extrapolated gap {gap:.3e}")
    return OracleResult(E, levels, hs, gap)


@dataclass(frozen=True)
class GeneralODEResult:
    energy: float | None
    flagged: bool
    reason: str
    rmax: float
    potential: Callable[[np.ndarray], np.ndarray]
    richardson_gap: float | None = None


def general_type1_ode(
    l: int,
    c1: float,
    c2: float,
    qkappa3: float = -1.0,
    M: float = 1.0,
    hbar: float = 1.0,
    rmax: float = 40.0,
    n: int = GRID_POINTS,
) -> GeneralODEResult:
    """Lowest level of the radial equation with the r-dependent spin coupling.

    ``u'' = [D(r) + Lambda(r)/r^2 + 2 M q kappa3/(hbar^2 r) - 2 M E/hbar^2] u``
    with ``c(r) = c1 + c2 r^3``.  For ``c2 != 0`` the effective potential
    falls without bound at large r, so the problem is posed on ``[0, rmax]``
    and the result is flagged whenever the truncated potential dips below
    the computed level anywhere in the outer half of the grid.
    """
    if qkappa3 > 0:
        raise NoBoundStateError("repulsive Coulomb coupling has no bound states")

    def V(r):
        r = np.asarray(r, dtype=float)
        Lam, _, _, drift = lambda_hat_r(l, c1, c2, r)
        return hbar**2 / (2 * M) * (drift + Lam / r**2) + qkappa3 / r

    lam0 = effective_lambda(lambda_hat_eigen(l, c1).lam_minus)
    E, _, _, gap = _extrapolate(V, M, hbar, rmax, n, 1, lam0)
    E0 = float(E[0])
    outer = np.linspace(rmax / 2, rmax, 2000)
    vmin = float(np.min(V(outer)))
    if vmin < E0:
        return GeneralODEResult(None, True, f"potential {vmin:.4g} below level {E0:.4g} near the grid edge", rmax, V, gap)
    return GeneralODEResult(E0, False, "", rmax, V, gap)


@dataclass(frozen=True)
class GroundObservables:
    mean_r: float
    C1: float
    C1_numeric: float
    mean_x: float
    mean_y: float
    mean_z: float


def hydrogen_ground_observables(M: float = 1.0, e_charge: float = 1.0, hbar: float = 1.0) -> GroundObservables:
    """Quadrature moments of ``psi = C1 e^{-r/a} Y_00`` with ``a = hbar^2/(M e^2)``."""
    a = hbar**2 / (M * e_charge**2)
    C1 = math.sqrt(4 * M**3 * e_charge**6 / hbar**6)
    norm, _ = integrate.quad(lambda r: r * r * math.exp(-2 * r / a), 0, np.inf, epsabs=0, epsrel=1e-13)
    C1_num = 1 / math.sqrt(norm)
    mom1, _ = integrate.quad(lambda r: r**3 * C1**2 * math.exp(-2 * r / a), 0, np.inf, epsabs=0, epsrel=1e-13)
    # angular moments of |Y_00|^2 against the unit vector
    xg, wg = np.polynomial.legendre.leggauss(32)
    ph = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    ct = xg[:, None]
    st = np.sqrt(1 - ct**2)
    dens = (1 / (4 * math.pi)) * wg[:, None] * (2 * math.pi / ph.size)
    ang = [
        float(np.sum(dens * st * np.cos(ph)[None, :])),
        float(np.sum(dens * st * np.sin(ph)[None, :])),
        float(np.sum(dens * ct * np.ones_like(ph)[None, :])),
    ]
    return GroundObservables(mom1, C1, C1_num, *(mom1 * v for v in ang))
