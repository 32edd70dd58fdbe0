"""Relativistic Coulomb spectra: standard Dirac hydrogen and the spin-vector-potential variant.

Both radial problems reduce to the same two-function system for polynomial
parts ``C(r) = sum c_n r^n`` and ``D(r) = sum d_n r^n``::

    C' + (nu + q) C / r + (p - X) D / r = 0
    D' + ((nu - q) / r - 2 eps) D - (X + p) C / r = 0

with ``X = l + 1`` (standard), ``X = (l+2) C1`` (type-II) or ``X = (l+1) C1'``
(type-II primed sector), and ``nu = sqrt(X^2 - kappa^2)``.  Bound states
terminate the series when ``nu + q = -N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoBoundStateError, SupercriticalError
from .radial import SpectrumLine

__all__ = [
    "ALPHA",
    "KCR_TABLE",
    "RelParams",
    "rel_params",
    "dirac_energy_standard",
    "dirac_energy_type2",
    "SeriesResult",
    "dirac_series_standard",
    "Type2Series",
    "dirac_series_type2",
    "c1_type2",
    "c1_primed",
    "z_bound",
    "kcr",
    "kcr_closed_alternative",
]

ALPHA = 1 / 137.0359

KCR_TABLE: dict[int, float] = {
    1: 273.0645, 2: 136.0213, 3: 90.3354, 4: 67.4888, 5: 53.7779, 6: 44.6348, 7: 38.1020,
    8: 33.2006, 9: 29.3867, 10: 26.3342, 20: 12.5576, 40: 5.5599, 60: 3.1300,
    100: 1.0110, 102: 0.9426, 104: 0.8764, 106: 0.8121, 108: 0.7496, 110: 0.6889,
    115: 0.5440, 118: 0.4616, 120: 0.4082, 125: 0.2804, 130: 0.1596, 135: 0.0450, 137: 0.0008,
}

RESIDUAL_GRID = (0.1, 10.0, 400)


@dataclass(frozen=True)
class RelParams:
    """Dimensionless relativistic parameters of one bound level."""

    kappa_bar: float
    k_bar: float
    E: float
    mu: float
    eps: float
    nu: float
    p_bar: float
    q_bar: float


def _energy(N: int, nu: float, kappa_bar: float, M: float, c: float) -> float:
    return M * c * c / math.sqrt(1 + kappa_bar**2 / (N + nu) ** 2)


def rel_params(
    N: int, nu: float, kappa_bar: float, k_bar: float = 0.0, M: float = 1.0, c: float = 1.0, hbar: float = 1.0
) -> RelParams:
    """``mu`` solves ``mu^2 + 2 (N + nu) mu / kappa - 1 = 0`` on the positive branch."""
    if kappa_bar >= 0:
        raise NoBoundStateError("bound states need an attractive coupling (kappa_bar < 0)")
    x = (N + nu) / abs(kappa_bar)
    mu = x + math.sqrt(x * x + 1)
    E = _energy(N, nu, kappa_bar, M, c)
    eps = math.sqrt(max(M * M * c**4 - E * E, 0.0)) / (hbar * c)
    p = kappa_bar / 2 * (mu + 1 / mu)
    q = kappa_bar / 2 * (mu - 1 / mu)
    return RelParams(kappa_bar, k_bar, E, mu, eps, nu, p, q)


def dirac_energy_standard(
    N: int, l: int, tau: float, M: float = 1.0, c: float = 1.0, hbar: float = 1.0
) -> SpectrumLine:
    """``E = M c^2 / sqrt(1 + tau^2 / (N + nu)^2)`` with ``nu = sqrt((l+1)^2 - tau^2)``."""
    if N < 0 or l < 0:
        raise DomainError("N and l must be non-negative")
    if tau >= 0:
        raise NoBoundStateError("bound states need tau < 0")
    rad = (l + 1) ** 2 - tau * tau
    if rad <= 0:
        raise SupercriticalError(f"|tau| = {abs(tau)} >= l + 1 = {l + 1}: nu is not real")
    nu = math.sqrt(rad)
    rp = rel_params(N, nu, tau, 0.0, M, c, hbar)
    mu_res = rp.mu**2 + 2 * (N + nu) * rp.mu / tau - 1
    return SpectrumLine(
        "dirac", N, l, {"tau": tau, "M": M, "c": c}, rp.E,
        extra={"nu": nu, "mu": rp.mu, "eps": rp.eps, "mu_residual": mu_res, "params": rp},
    )


def c1_type2(l: int, k_bar: float) -> float:
    S = (2 * k_bar - 1) ** 2 + 4 * (l + 1) * (l + 2)
    return ((2 * k_bar - 1) + math.sqrt(S)) / (2 * (l + 2))


def c1_primed(l: int, k_bar: float, variant: str = "matched") -> float:
    """Amplitude ratio ``A'/C'`` of the primed sector.

    ``matched`` is the root of ``(l+1) C^2 + (2k-1) C - (l+2) = 0`` that
    keeps ``nu' = nu``; ``opposite`` is the opposite-sign value, which solves
    the quadratic with the linear term negated.
    """
    S = (2 * k_bar - 1) ** 2 + 4 * (l + 1) * (l + 2)
    val = ((2 * k_bar - 1) + math.sqrt(S)) / (2 * (l + 1))
    if variant == "matched":
        return -val
    if variant == "opposite":
        return val
    raise DomainError(f"variant must be 'matched' or 'opposite', got {variant!r}")


def dirac_energy_type2(
    N: int, l: int, k_bar: float, kappa_bar: float, M: float = 1.0, c: float = 1.0, hbar: float = 1.0
) -> SpectrumLine:
    """Level with the spin vector potential; ``extra`` carries nu, C1 and both C1' values."""
    if N < 0 or l < 0:
        raise DomainError("N and l must be non-negative")
    C1 = c1_type2(l, k_bar)
    X = (l + 2) * C1
    rad = X * X - kappa_bar**2
    if rad <= 0:
        raise SupercriticalError(f"nu radicand {rad:.6g} <= 0 at l={l}, k_bar={k_bar}, kappa_bar={kappa_bar}")
    nu = math.sqrt(rad)
    rp = rel_params(N, nu, kappa_bar, k_bar, M, c, hbar)
    return SpectrumLine(
        "dirac-type2", N, l, {"k_bar": k_bar, "kappa_bar": kappa_bar, "M": M, "c": c}, rp.E,
        extra={
            "nu": nu,
            "C1": C1,
            "C1p": c1_primed(l, k_bar, "opposite"),
            "C1p_matched": c1_primed(l, k_bar, "matched"),
            "nu_gt_1": nu > 1,
            "params": rp,
        },
    )


# ------------------------------------------------------------------ series


def _series(N: int, nu: float, q: float, p: float, X: float, eps: float):
    """Coefficients from the one-step recursions.

    ``d_n = 2 eps (n + nu + q) / (n (n + 2 nu)) d_{n-1}`` and
    ``c_n = 2 eps (n - 1 + nu + q) / (n (n + 2 nu)) c_{n-1}``, seeded by the
    index-0 relation ``(nu + q) c_0 = (X - p) d_0``.  Two extra terms past
    the expected cut-off are returned so that termination can be inspected.
    """
    s = nu + q
    n_terms = N + 3
    c = np.zeros(n_terms)
    d = np.zeros(n_terms)
    if N == 0:
        # c_0 free, d_0 forced to zero by the index-0 relation
        c[0], d[0] = 1.0, 0.0
    else:
        d[0] = 1.0
        c[0] = (X - p) * d[0] / s
    for n in range(1, n_terms):
        den = n * (n + 2 * nu)
        d[n] = 2 * eps * (n + s) / den * d[n - 1]
        c[n] = 2 * eps * (n - 1 + s) / den * c[n - 1]
    return c, d


def _poly(coef, r):
    return np.polynomial.polynomial.polyval(r, coef)


def _dpoly(coef, r):
    return np.polynomial.polynomial.polyval(r, np.polynomial.polynomial.polyder(coef)) if len(coef) > 1 else 0 * r


def _grid(rng):
    lo, hi, n = rng
    return np.linspace(lo, hi, int(n))


def _reduced_residual(c, d, nu, q, p, X, eps, r) -> float:
    C, D = _poly(c, r), _poly(d, r)
    r1 = _dpoly(c, r) + (nu + q) * C / r + (p - X) * D / r
    r2 = _dpoly(d, r) + ((nu - q) / r - 2 * eps) * D - (X + p) * C / r
    scale = max(np.max(np.abs(C)), np.max(np.abs(D)))
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))) / scale)


@dataclass
class SeriesResult:
    N: int
    c: np.ndarray
    d: np.ndarray
    c_tail: float
    d_tail: float
    ode_residual: float
    denominator_gap: float
    ratio_inf: float
    ratio_origin: float | None
    ratio_origin_expected: float | None
    identity_residual: float
    params: RelParams = field(repr=False)

    @property
    def terminates(self) -> bool:
        return self.c_tail < 1e-12 and self.d_tail < 1e-12


def dirac_series_standard(
    N: int, l: int, tau: float, M: float = 1.0, c: float = 1.0, hbar: float = 1.0, r_grid=RESIDUAL_GRID
) -> SeriesResult:
    """Series for ``h1 = sum a_K r^K`` and ``h2 = sum b_K r^K`` at the closed-form energy.

    Tails are ``max |a_i|, i > N`` and ``max |b_j|, j >= N`` relative to the
    largest coefficient.  ``ratio_inf`` is ``lim F/(i G)`` (expected ``mu``).
    """
    line = dirac_energy_standard(N, l, tau, M, c, hbar)
    rp: RelParams = line.extra["params"]
    X = l + 1
    a, b = _series(N, rp.nu, rp.q_bar, rp.p_bar, X, rp.eps)
    big = max(np.max(np.abs(a)), np.max(np.abs(b)))
    c_tail = float(np.max(np.abs(a[N + 1 :])) / big)
    d_tail = float(np.max(np.abs(b[N:])) / big)
    r = _grid(r_grid)
    res = _reduced_residual(a[: N + 1], b[: max(N, 1)], rp.nu, rp.q_bar, rp.p_bar, X, rp.eps, r)
    # full denominator (K+nu)^2 - k1^2 + k2^2 - (l+1)^2 against K (K + 2 nu)
    K = np.arange(1, N + 3)
    full = (K + rp.nu) ** 2 - rp.q_bar**2 + rp.p_bar**2 - X**2
    gap = float(np.max(np.abs(full - K * (K + 2 * rp.nu))))
    lead = a[N]
    ratio_inf = rp.mu * (lead + b[N]) / (lead - b[N])
    D1, D2 = a[0], b[0]
    ratio0 = rp.mu * (D1 + D2) / (D1 - D2)
    expected0 = math.sqrt((X + rp.nu) / (X - rp.nu))
    ident = (X - rp.nu) * tau - tau**2 * rp.mu + tau * (tau * rp.mu - (X - rp.nu))
    return SeriesResult(N, a, b, c_tail, d_tail, res, gap, float(ratio_inf), float(ratio0), expected0, ident, rp)


@dataclass
class Type2Series:
    N: int
    c: np.ndarray
    d: np.ndarray
    c_tail: float
    d_tail: float
    residual: float
    residual_primed: float | None
    primed_variant: str
    primed_note: str
    denominators: np.ndarray
    denominators_target: np.ndarray
    denominator_gap: float
    params: RelParams = field(repr=False)
    cp: np.ndarray | None = None
    dp: np.ndarray | None = None

    @property
    def terminates(self) -> bool:
        return self.c_tail < 1e-12 and self.d_tail < 1e-12


def _full_residual(A, B, C, D, dA, dB, dC, dD, r, nu, q, p, k_bar, l, primed: bool) -> list:
    e2 = 2 * k_bar - 1
    if not primed:
        f = [
            dA + (nu + q) * A / r + (e2 - p) * B / r - (l + 1) * D / r,
            dB + ((nu - q) / r) * B + (l + 1) * C / r + (e2 + p) * A / r,
            dC + (nu + q) * C / r + (l + 2) * B / r + p * D / r,
            dD + ((nu - q) / r) * D - (l + 2) * A / r - p * C / r,
        ]
    else:
        f = [
            dA + (nu + q) * A / r - (e2 + p) * B / r - (l + 2) * D / r,
            dB + ((nu - q) / r) * B + (l + 2) * C / r - (e2 - p) * A / r,
            dC + (nu + q) * C / r + (l + 1) * B / r + p * D / r,
            dD + ((nu - q) / r) * D - (l + 1) * A / r - p * C / r,
        ]
    return f


def _system_residual(c, d, C1, r, rp: RelParams, l, primed: bool) -> float:
    C, D = _poly(c, r), _poly(d, r)
    dC, dD = _dpoly(c, r), _dpoly(d, r)
    A, B, dA, dB = C1 * C, -C1 * D, C1 * dC, -C1 * dD
    f = _full_residual(A, B, C, D, dA, dB, dC, dD, r, rp.nu, rp.q_bar, rp.p_bar, rp.k_bar, l, primed)
    # the -2 eps terms of the B and D equations
    f[1] = f[1] - 2 * rp.eps * B
    f[3] = f[3] - 2 * rp.eps * D
    scale = max(np.max(np.abs(v)) for v in (A, B, C, D))
    return float(max(np.max(np.abs(v)) for v in f) / scale)


def dirac_series_type2(
    N: int,
    l: int,
    k_bar: float,
    kappa_bar: float,
    M: float = 1.0,
    c: float = 1.0,
    hbar: float = 1.0,
    primed: str = "matched",
    r_grid=RESIDUAL_GRID,
) -> Type2Series:
    """Truncated series for both spinor sectors and their first-order-system residuals.

    Residuals are sup-norms on ``r_grid`` after scaling the four functions to
    unit sup-norm.  The denominator report compares
    ``(n+1+nu)^2 + kappa^2 - (l+2)^2 C1^2`` with ``(n+1)(n+1+2nu)``.
    """
    line = dirac_energy_type2(N, l, k_bar, kappa_bar, M, c, hbar)
    rp: RelParams = line.extra["params"]
    C1 = line.extra["C1"]
    X = (l + 2) * C1
    cc, dd = _series(N, rp.nu, rp.q_bar, rp.p_bar, X, rp.eps)
    big = max(np.max(np.abs(cc)), np.max(np.abs(dd)))
    c_tail = float(np.max(np.abs(cc[N + 1 :])) / big)
    d_tail = float(np.max(np.abs(dd[N:])) / big)
    r = _grid(r_grid)
    res = _system_residual(cc[: N + 1], dd[: max(N, 1)], C1, r, rp, l, primed=False)

    n = np.arange(0, 4)
    dens = (n + 1 + rp.nu) ** 2 + kappa_bar**2 - (l + 2) ** 2 * C1**2
    target = (n + 1) * (n + 1 + 2 * rp.nu)
    gap = float(np.max(np.abs(dens - target)))

    C1p = c1_primed(l, k_bar, primed)
    Xp = (l + 1) * C1p
    res_p: float | None
    cp = dp = None
    note = ""
    if N == 0 and Xp + rp.p_bar != 0 and abs(Xp + rp.p_bar) > 1e-9:
        # p = -|X| at N = 0, so a negative X' leaves the d-series non-terminating
        res_p = None
        note = "no terminating N = 0 solution in this sector"
    else:
        cp, dp = _series(N, rp.nu, rp.q_bar, rp.p_bar, Xp, rp.eps)
        res_p = _system_residual(cp[: N + 1], dp[: max(N, 1)], C1p, r, rp, l, primed=True)
    return Type2Series(N, cc, dd, c_tail, d_tail, res, res_p, primed, note, dens, target, gap, rp, cp, dp)


# ------------------------------------------------------------------ Z bound


def _check_alpha(alpha: float) -> None:
    if not (0 < alpha <= 0.01):
        raise DomainError(f"alpha must lie in (0, 0.01], got {alpha}")


def z_bound(k: float, alpha: float = ALPHA) -> float:
    """Largest Z with a real exponent; ``k`` is the dimensionless ``e k / c``."""
    _check_alpha(alpha)
    u = k + 1
    return (math.sqrt(u * u + 8) - u) / (2 * alpha)


def kcr(Z: int, alpha: float = ALPHA) -> float:
    """Critical ``e k / c`` at which the exponent radicand vanishes for charge Z.

    Inverting ``((sqrt(u^2 + 8) - u) / 2)^2 = (Z alpha)^2`` with ``u = k + 1``
    gives ``u = 2/(Z alpha) - Z alpha``.
    """
    _check_alpha(alpha)
    if int(Z) != Z or Z < 1:
        raise DomainError(f"Z must be a positive integer, got {Z}")
    za = Z * alpha
    val = 2 / za - 1 - za
    if val <= 0:
        raise SupercriticalError(f"Z = {Z} exceeds the bound already at k = 0 (k_cr = {val:.6g})")
    return val


def kcr_closed_alternative(Z: int, alpha: float = ALPHA) -> float:
    """``(1 - Z alpha - (Z alpha)^2) / (Z alpha)``; kept only to document its mismatch with :func:`kcr`."""
    za = Z * alpha
    return (1 - za - za * za) / za
