"""Angular eigenproblems for spin-1/2 coupled harmonics and the eight-component eta operator.

Coupled harmonics (spin-1/2, components ordered spin up / spin down)::

    A(l, m) = ( sqrt(l+m+1) Y_lm,  sqrt(l-m)   Y_l,m+1) / sqrt(2l+1)   j = l + 1/2
    B(l, m) = (-sqrt(l-m)   Y_lm,  sqrt(l+m+1) Y_l,m+1) / sqrt(2l+1)   j = l - 1/2

Both have J_z = m + 1/2.  Differential operators act by fourth-order finite
differences in (theta, phi), which keeps them independent of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .errors import DomainError, SupercriticalError
from .spin import pauli
from .specfun import ylm_or_zero

__all__ = [
    "CoupledHarmonic",
    "coupled_harmonic",
    "harmonic_residuals",
    "apply_l2",
    "apply_lz",
    "apply_jz",
    "apply_l_dot_s",
    "sample_directions",
    "sphere_quadrature",
    "sigma_r",
    "sigma_r_intertwine",
    "s_r_residual",
    "ls_eigen",
    "ls_residual",
    "LambdaEigen",
    "lambda_hat_eigen",
    "lambda_hat_matrix",
    "lambda_linear_residual",
    "lambda_hat_r",
    "eta_matrix",
    "EtaEigen",
    "eta_eigen",
    "ETA_BRANCHES",
    "EtaFunction",
    "eta_eigenfunction",
    "eta_eigen_residual",
    "eta_general_pm2",
    "eta_pm2_normalization",
]

_FD_H = 1e-3


# ---------------------------------------------------------------- harmonics


def _admissible(l: int, m: int, variant: str) -> bool:
    if variant == "A":
        return l >= 0 and -l - 1 <= m <= l
    return l >= 1 and -l <= m <= l - 1


def _ch_eval(l: int, m: int, variant: str, theta, phi) -> np.ndarray:
    """Coupled harmonic as a (2, ...) array; inadmissible indices give zero."""
    shape = np.broadcast(np.asarray(theta), np.asarray(phi)).shape
    if not _admissible(l, m, variant):
        return np.zeros((2,) + shape, dtype=complex)
    n = math.sqrt(2 * l + 1)
    y0 = ylm_or_zero(l, m, theta, phi) * np.ones(shape)
    y1 = ylm_or_zero(l, m + 1, theta, phi) * np.ones(shape)
    if variant == "A":
        return np.stack([math.sqrt(l + m + 1) * y0, math.sqrt(l - m) * y1]) / n
    return np.stack([-math.sqrt(l - m) * y0, math.sqrt(l + m + 1) * y1]) / n


@dataclass(frozen=True)
class CoupledHarmonic:
    l: int
    m: int
    variant: str

    @property
    def j(self) -> float:
        return self.l + 0.5 if self.variant == "A" else self.l - 0.5

    @property
    def mj(self) -> float:
        return self.m + 0.5

    def __call__(self, theta, phi) -> np.ndarray:
        return _ch_eval(self.l, self.m, self.variant, theta, phi)


def coupled_harmonic(l: int, m: int, variant: str) -> CoupledHarmonic:
    variant = str(variant).upper()
    if variant not in ("A", "B"):
        raise DomainError(f"variant must be A or B, got {variant!r}")
    if not _admissible(l, m, variant):
        raise DomainError(f"inadmissible coupled harmonic l={l}, m={m}, variant {variant}")
    return CoupledHarmonic(int(l), int(m), variant)


# ---------------------------------------------------------------- FD operators


def _d1(fun, theta, phi, axis: int, h: float):
    def at(k):
        return fun(theta + k * h, phi) if axis == 0 else fun(theta, phi + k * h)

    return (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h)


def _d2(fun, theta, phi, axis: int, h: float):
    def at(k):
        return fun(theta + k * h, phi) if axis == 0 else fun(theta, phi + k * h)

    return (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h)


def apply_l2(fun, theta, phi, h: float = _FD_H):
    """``l^2 f = -[f_tt + cot(t) f_t + f_pp / sin^2 t]`` (hbar = 1)."""
    st, ct = np.sin(theta), np.cos(theta)
    return -(
        _d2(fun, theta, phi, 0, h)
        + ct / st * _d1(fun, theta, phi, 0, h)
        + _d2(fun, theta, phi, 1, h) / st**2
    )


def apply_lz(fun, theta, phi, h: float = _FD_H):
    return -1j * _d1(fun, theta, phi, 1, h)


def _l_pm(fun, theta, phi, sign: int, h: float):
    # l_{+-} = e^{+-i phi} (+- d_theta + i cot(theta) d_phi)
    cot = np.cos(theta) / np.sin(theta)
    return np.exp(sign * 1j * phi) * (
        sign * _d1(fun, theta, phi, 0, h) + 1j * cot * _d1(fun, theta, phi, 1, h)
    )


def apply_jz(spinor, theta, phi, h: float = _FD_H):
    """``J_z = l_z + S_z`` on a two-component function."""
    v = spinor(theta, phi)
    out = apply_lz(spinor, theta, phi, h)
    return out + 0.5 * np.stack([v[0], -v[1]])


def apply_l_dot_s(spinor, theta, phi, h: float = _FD_H):
    """``l.S = l_z S_z + (l_+ S_- + l_- S_+)/2`` with ``S = sigma/2``."""
    lz = apply_lz(spinor, theta, phi, h)
    lp = _l_pm(spinor, theta, phi, +1, h)
    lm = _l_pm(spinor, theta, phi, -1, h)
    up = 0.5 * lz[0] + 0.5 * lm[1]
    dn = -0.5 * lz[1] + 0.5 * lp[0]
    return np.stack([up, dn])


def sample_directions(n: int = 50, cone: float = 0.05) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic low-discrepancy directions away from the polar axis."""
    pts = qmc.Halton(d=2, scramble=False).random(n + 1)[1:]
    cmax = math.cos(cone)
    theta = np.arccos(cmax * (2 * pts[:, 0] - 1))
    phi = 2 * np.pi * pts[:, 1]
    return theta, phi


def sphere_quadrature(n_theta: int = 40, n_phi: int = 64):
    """Gauss-Legendre in cos(theta) times the trapezoid rule in phi."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    th = np.arccos(x)[:, None] * np.ones((1, n_phi))
    ph = (2 * np.pi * np.arange(n_phi) / n_phi)[None, :] * np.ones((n_theta, 1))
    wt = w[:, None] * (2 * np.pi / n_phi) * np.ones((1, n_phi))
    return th, ph, wt


def _inner(f, g, wt) -> complex:
    return complex(np.sum(np.conj(f) * g * wt))


def harmonic_residuals(ch: CoupledHarmonic, n_dirs: int = 50, h: float = _FD_H) -> dict[str, float]:
    """Sup-norm residuals of the l^2 and J_z eigen-equations and the norm defect."""
    th, ph = sample_directions(n_dirs)
    v = ch(th, ph)
    l2 = apply_l2(ch, th, ph, h)
    jz = apply_jz(ch, th, ph, h)
    qt, qp, qw = sphere_quadrature(max(20, ch.l + 10), max(32, 2 * ch.l + 8))
    q = ch(qt, qp)
    return {
        "l2": float(np.max(np.abs(l2 - ch.l * (ch.l + 1) * v))),
        "jz": float(np.max(np.abs(jz - ch.mj * v))),
        "norm": abs(_inner(q, q, qw).real - 1.0),
    }


# ---------------------------------------------------------------- sigma_r and l.S


def sigma_r(theta, phi) -> np.ndarray:
    sx, sy, sz = pauli()
    st = np.sin(theta)
    return st * np.cos(phi) * sx + st * np.sin(phi) * sy + np.cos(theta) * sz


def _apply_sigma_r(theta, phi, v):
    st, ct = np.sin(theta), np.cos(theta)
    em = st * np.exp(-1j * phi)
    ep = st * np.exp(1j * phi)
    return np.stack([ct * v[0] + em * v[1], ep * v[0] - ct * v[1]])


def sigma_r_intertwine(l: int, m: int, n_dirs: int = 50) -> float:
    """Max of ``|sigma_r A(l,m) + B(l+1,m)|`` and ``|sigma_r B(l+1,m) + A(l,m)|``."""
    coupled_harmonic(l, m, "A")
    th, ph = sample_directions(n_dirs)
    a = _ch_eval(l, m, "A", th, ph)
    b = _ch_eval(l + 1, m, "B", th, ph)
    r1 = np.max(np.abs(_apply_sigma_r(th, ph, a) + b))
    r2 = np.max(np.abs(_apply_sigma_r(th, ph, b) + a))
    return float(max(r1, r2))


def s_r_residual(l: int, m: int, n_dirs: int = 50) -> dict[float, float]:
    """``S_r (A -+ B) = +-(1/2)(A -+ B)`` residuals keyed by the eigenvalue."""
    th, ph = sample_directions(n_dirs)
    a = _ch_eval(l, m, "A", th, ph)
    b = _ch_eval(l + 1, m, "B", th, ph)
    out = {}
    for ev, v in ((0.5, a - b), (-0.5, a + b)):
        out[ev] = float(np.max(np.abs(0.5 * _apply_sigma_r(th, ph, v) - ev * v)))
    return out


def ls_eigen(l: int, case: str) -> float:
    """Eigenvalue of ``l.S`` (hbar = 1): l/2 for j = l+1/2, -(l+1)/2 for j = l-1/2."""
    case = str(case).upper()
    if l < 0:
        raise DomainError("l must be non-negative")
    if case == "A":
        return l / 2
    if case == "B":
        if l == 0:
            raise DomainError("j = l - 1/2 does not exist for l = 0")
        return -(l + 1) / 2
    raise DomainError(f"case must be A or B, got {case!r}")


def ls_residual(l: int, m: int, case: str, n_dirs: int = 50, h: float = _FD_H) -> float:
    W = ls_eigen(l, case)
    ch = coupled_harmonic(l, m, case)
    th, ph = sample_directions(n_dirs)
    return float(np.max(np.abs(apply_l_dot_s(ch, th, ph, h) - W * ch(th, ph))))


# ---------------------------------------------------------------- Lambda operator


@dataclass(frozen=True)
class LambdaEigen:
    l: int
    c1: float
    lam_minus: float
    lam_plus: float
    chi: float

    @property
    def a_l(self) -> float:
        return math.cos(self.chi)

    @property
    def b_l(self) -> float:
        return math.sin(self.chi)

    @property
    def lam(self) -> float:
        """Root ``lambda >= -1/2`` of ``lambda (lambda+1) = Lambda_-``."""
        disc = 1 + 4 * self.lam_minus
        if disc < 0:
            raise SupercriticalError(
                f"1 + 4 Lambda_- = {disc:.6g} < 0 at l={self.l}, c1={self.c1}: lambda is complex"
            )
        return (-1 + math.sqrt(disc)) / 2


def lambda_hat_matrix(l: int, c1: float, sign: int = -1) -> np.ndarray:
    """``l^2 + c1 sigma_r`` in the basis {A(l,m), B(l+1,m)}.

    ``sigma_r`` maps each basis vector to minus the other, so the natural
    off-diagonal entry is ``-c1``; ``sign=+1`` gives the similar matrix with
    ``+c1`` (same spectrum).
    """
    return np.array([[l * (l + 1), sign * c1], [sign * c1, (l + 1) * (l + 2)]], dtype=float)


def lambda_hat_eigen(l: int, c1: float) -> LambdaEigen:
    """Closed-form eigenvalues ``(l+1)^2 -+ sqrt((l+1)^2 + c1^2)`` and mixing angle.

    The lower eigenvector is ``(a+b) A - (a-b) B`` with ``a = cos chi``,
    ``b = sin chi`` and ``tan 2chi = -(l+1)/c1`` on the branch
    ``sin 2chi = (l+1)/rho > 0``.
    """
    if l < 0:
        raise DomainError("l must be non-negative")
    L = l + 1
    rho = math.hypot(L, c1)
    chi = 0.5 * math.atan2(L, -c1)
    return LambdaEigen(int(l), float(c1), L * L - rho, L * L + rho, chi)


def lambda_linear_residual(eig: LambdaEigen) -> float:
    """Both rows of the linear system for the lower eigenvector."""
    l, c1 = eig.l, eig.c1
    u = eig.a_l + eig.b_l
    v = -(eig.a_l - eig.b_l)
    M = lambda_hat_matrix(l, c1)
    res = M @ np.array([u, v]) - eig.lam_minus * np.array([u, v])
    return float(np.max(np.abs(res)))


def lambda_hat_r(l: int, c1: float, c2: float, r):
    """r-dependent coupling ``c(r) = c1 + c2 r^3``.

    Returns ``(Lambda(r), a_l(r), b_l(r), drift)`` where ``drift = chi'(r)^2``
    enters the radial equation as an extra centrifugal-like term.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    L = l + 1
    c = c1 + c2 * r**3
    rho2 = L * L + c * c
    Lam = L * L - np.sqrt(rho2)
    chi = 0.5 * np.arctan2(L, -c)
    drift = 2.25 * L * L * c2 * c2 * r**4 / rho2**2
    return Lam, np.cos(chi), np.sin(chi), drift


# ---------------------------------------------------------------- eta operator


def _unit(direction) -> np.ndarray:
    d = np.asarray(direction, dtype=float)
    n = float(np.linalg.norm(d))
    if n == 0:
        raise DomainError("direction must be non-zero")
    return d / n


def _eta_linear(v) -> np.ndarray:
    # Dirac (x) spin1 (x) spin2, alpha_1 = sigma_x (x) sigma_1
    s = pauli()
    core = np.zeros((4, 4), dtype=complex)
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        core += v[i] * (np.kron(s[j], s[k]) - np.kron(s[k], s[j]))
    return np.kron(s[0], core)


def eta_matrix(direction) -> np.ndarray:
    """``eta = r_hat . (alpha_1 x sigma_2)`` as an 8x8 matrix."""
    return _eta_linear(_unit(direction))


def _total_spin() -> list[np.ndarray]:
    s = pauli()
    i2 = np.eye(2)
    return [0.5 * np.kron(i2, np.kron(sk, i2) + np.kron(i2, sk)) for sk in s]


@dataclass(frozen=True)
class EtaEigen:
    eigenvalues: np.ndarray
    projectors: dict[int, np.ndarray]
    j_commutator: float
    hermitian_defect: float


def eta_eigen(direction) -> EtaEigen:
    """Diagonalize eta along one direction and check it commutes with J.

    ``[J_a, eta(r_hat)] = -i eta(e_a x r_hat) + [Sigma_a, eta]`` where the
    first term is the orbital part acting on the direction dependence.
    """
    n = _unit(direction)
    eta = _eta_linear(n)
    w, V = np.linalg.eigh(eta)
    proj = {}
    for ev in (2, -2, 0):
        sel = np.abs(w - ev) < 1e-6
        U = V[:, sel]
        proj[ev] = U @ U.conj().T
    Sig = _total_spin()
    comm = 0.0
    for a in range(3):
        e = np.zeros(3)
        e[a] = 1
        orbital = -1j * _eta_linear(np.cross(e, n))
        c = orbital + Sig[a] @ eta - eta @ Sig[a]
        comm = max(comm, float(np.max(np.abs(c))))
    herm = float(np.max(np.abs(eta - eta.conj().T)))
    return EtaEigen(np.sort(w), proj, comm, herm)


# Eigenfunction list.  Each term: (dirac, s2, kind, dl, dm, coefficient) with
# dirac 0/1 = upper/lower, s2 0/1 = spin-2 up/down, kind "A" -> A(l+dl, m+dm)
# and kind "B" -> B(l+dl+1, m+dm).  Coefficients are functions of (l, m).


def _sq(num, den):
    return math.sqrt(num / den) if num > 0 else 0.0


def _phi1(ph):
    def terms(l, m):
        p = _sq(l - m + 1, l + m + 2)
        f = _sq(l - m, l + m + 2)
        q = _sq(l + m + 3, l + m + 2)
        return [
            (0, 0, "A", 0, 0, 1.0), (0, 0, "B", 1, 0, p),
            (1, 0, "B", 0, 0, ph), (1, 0, "A", 1, 0, ph * p),
            (0, 1, "A", 0, 1, f), (0, 1, "B", 1, 1, -q),
            (1, 1, "B", 0, 1, ph * f), (1, 1, "A", 1, 1, -ph * q),
        ]
    return terms


def _phi2(ph):
    def terms(l, m):
        p = _sq(l + m + 2, l - m + 1)
        g = _sq(l + m + 3, l - m + 1)
        gq = _sq(l - m, l - m + 1)
        return [
            (0, 0, "A", 1, 0, 1.0), (0, 0, "B", 0, 0, p),
            (1, 0, "B", 1, 0, ph), (1, 0, "A", 0, 0, ph * p),
            (0, 1, "A", 1, 1, -g), (0, 1, "B", 0, 1, gq),
            (1, 1, "B", 1, 1, -ph * g), (1, 1, "A", 0, 1, ph * gq),
        ]
    return terms


def _phi3(dirac, ph):
    def terms(l, m):
        r1 = (l + 1) / (l + 2)
        p = _sq(l - m + 1, l + m + 2)
        f = _sq(l - m, l + m + 2)
        q = _sq(l + m + 3, l + m + 2)
        first, second = ("A", "B") if dirac == 0 else ("B", "A")
        return [
            (dirac, 0, first, 0, 0, ph), (dirac, 0, second, 1, 0, -ph * r1 * p),
            (dirac, 1, first, 0, 1, ph * f), (dirac, 1, second, 1, 1, ph * r1 * q),
        ]
    return terms


def _phi4(dirac, ph, lead_m: bool = False):
    def terms(l, m):
        r2 = (l + 2) / (l + 1)
        p = _sq(l + m + 2, l - m + 1)
        g = _sq(l + m + 3, l - m + 1)
        gq = _sq(l - m, l - m + 1)
        first, second = ("A", "B") if dirac == 0 else ("B", "A")
        # lead_m uses the literal m (instead of m+1) in the lead term
        dm = 0 if lead_m else 1
        return [
            (dirac, 0, first, 1, 0, ph), (dirac, 0, second, 0, 0, -ph * r2 * p),
            (dirac, 1, first, 1, dm, -ph * g), (dirac, 1, second, 0, 1, -ph * r2 * gq),
        ]
    return terms


ETA_BRANCHES: dict[str, tuple[int, object]] = {
    "phi1": (2, _phi1(-1j)),
    "phi1p": (-2, _phi1(1j)),
    "phi2": (2, _phi2(1j)),
    "phi2p": (-2, _phi2(-1j)),
    "phi3": (0, _phi3(0, 1.0)),
    "phi3p": (0, _phi3(1, -1j)),
    "phi4": (0, _phi4(0, 1.0)),
    "phi4p": (0, _phi4(1, 1j)),
    "phi4p-lead-m": (0, _phi4(1, 1j, lead_m=True)),
}


@dataclass(frozen=True)
class EtaFunction:
    l: int
    m: int
    branch: str
    eigenvalue: int
    terms: tuple

    def __call__(self, theta, phi) -> np.ndarray:
        """Eight components ordered as kron(dirac, spin1, spin2)."""
        shape = np.broadcast(np.asarray(theta), np.asarray(phi)).shape
        out = np.zeros((2, 2, 2) + shape, dtype=complex)
        for dirac, s2, kind, dl, dm, c in self.terms:
            if c == 0:
                continue
            L = self.l + dl + (1 if kind == "B" else 0)
            out[dirac, :, s2] += c * _ch_eval(L, self.m + dm, kind, theta, phi)
        return out.reshape((8,) + shape)


def eta_eigenfunction(l: int, m: int, branch: str) -> EtaFunction:
    if branch not in ETA_BRANCHES:
        raise DomainError(f"unknown branch {branch!r}; choose from {sorted(ETA_BRANCHES)}")
    if l < 0 or not (-l - 1 <= m <= l):
        raise DomainError(f"inadmissible (l, m) = ({l}, {m}); need -l-1 <= m <= l")
    ev, build = ETA_BRANCHES[branch]
    terms = tuple(build(l, m))
    for dirac, s2, kind, dl, dm, c in terms:
        L = l + dl + (1 if kind == "B" else 0)
        if c != 0 and not _admissible(L, m + dm, kind):
            raise DomainError(f"branch {branch} at (l, m) = ({l}, {m}) needs inadmissible {kind}({L}, {m + dm})")
    return EtaFunction(int(l), int(m), branch, ev, terms)


def _eta_apply(theta, phi, v) -> np.ndarray:
    st, ct = np.sin(theta), np.cos(theta)
    dirs = np.stack([st * np.cos(phi), st * np.sin(phi), ct * np.ones_like(phi)])
    mats = np.einsum("i...,iab->...ab", dirs, np.stack([_eta_linear(e) for e in np.eye(3)]))
    return np.einsum("...ab,b...->a...", mats, v)


def eta_eigen_residual(fn: EtaFunction, n_dirs: int = 50) -> tuple[float, float]:
    """``(residual, scale)``: sup |eta F - eigenvalue F| over directions and sup |F|."""
    th, ph = sample_directions(n_dirs)
    v = fn(th, ph)
    scale = float(np.max(np.abs(v)))
    if scale == 0:
        raise DomainError(f"branch {fn.branch} vanishes identically at (l, m) = ({fn.l}, {fn.m})")
    res = float(np.max(np.abs(_eta_apply(th, ph, v) - fn.eigenvalue * v)))
    return res, scale


def eta_general_pm2(l: int, m: int, a1: complex, a1p: complex, eta: int = 2) -> EtaFunction:
    """General eta = +-2 function from the coefficient relations in the 16-term ansatz.

    The ansatz places A(l), A(l+1), B_l, B_{l+1} (coefficients a_1..a_4, primed
    for the lower Dirac slot) with spin-2 up at m and the b coefficients with
    spin-2 down at m+1.  Only ``a_1`` and ``a_1'`` are free.
    """
    if eta not in (2, -2):
        raise DomainError("eta must be 2 or -2")
    s = 1j if eta == 2 else -1j
    D = l + m + 2
    r = lambda num: _sq(num, D)  # noqa: E731
    a4, b1 = r(l - m + 1) * a1, r(l - m) * a1
    b2p = s * r(l + m + 3) * a1
    b4 = -r(l + m + 3) * a1
    a2p = -s * r(l - m + 1) * a1
    a3p = -s * a1
    b3p = -s * r(l - m) * a1
    b1p, a4p = r(l - m) * a1p, r(l - m + 1) * a1p
    b2 = s * r(l + m + 3) * a1p
    b4p = -r(l + m + 3) * a1p
    a2 = -s * r(l - m + 1) * a1p
    a3 = -s * a1p
    b3 = -s * r(l - m) * a1p
    # (dirac, s2, kind, dl, dm, coef); kind "B" adds one to l as in the eigenfunction list
    terms = (
        (0, 0, "A", 0, 0, a1), (0, 0, "A", 1, 0, a2), (0, 0, "B", 0, 0, a3), (0, 0, "B", 1, 0, a4),
        (1, 0, "A", 0, 0, a1p), (1, 0, "A", 1, 0, a2p), (1, 0, "B", 0, 0, a3p), (1, 0, "B", 1, 0, a4p),
        (0, 1, "A", 0, 1, b1), (0, 1, "A", 1, 1, b2), (0, 1, "B", 0, 1, b3), (0, 1, "B", 1, 1, b4),
        (1, 1, "A", 0, 1, b1p), (1, 1, "A", 1, 1, b2p), (1, 1, "B", 0, 1, b3p), (1, 1, "B", 1, 1, b4p),
    )
    return EtaFunction(int(l), int(m), f"general{eta:+d}", eta, terms)


def eta_pm2_normalization(l: int, m: int, a1: complex = 1.0, a1p: complex = 0.5j, eta: int = 2) -> float:
    """``|a_1|^2 + |a_1'|^2`` after scaling the general function to unit norm by quadrature."""
    fn = eta_general_pm2(l, m, a1, a1p, eta)
    th, ph, w = sphere_quadrature(max(20, l + 12), max(32, 2 * l + 12))
    v = fn(th, ph)
    norm2 = float(np.sum(np.abs(v) ** 2 * w))
    return (abs(a1) ** 2 + abs(a1p) ** 2) / norm2
