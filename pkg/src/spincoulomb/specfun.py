"""Kummer series, associated Legendre functions and spherical harmonics.

Phase convention: ``P_l^m(z) = (-1)^m (1-z^2)^{m/2} d^m P_l / dz^m`` for
``m >= 0`` and an extra ``(-1)^m`` in ``Y_lm`` for ``m < 0``.  The result is
the usual Condon-Shortley basis, e.g. ``Y_11 = -sqrt(3/8 pi) sin(theta) e^{i phi}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "KummerParams",
    "kummer_1f1",
    "kummer_coefficients",
    "assoc_legendre",
    "spherical_harmonic",
    "ylm_or_zero",
    "recur_a",
    "recur_b",
    "verify_recursions",
    "KUMMER_X_MAX",
]

KUMMER_X_MAX = 700.0
_MAX_TERMS = 100_000


def _nonpositive_int(v: float) -> int | None:
    if v <= 0 and abs(v - round(v)) < 1e-12:
        return int(round(-v))
    return None


@dataclass(frozen=True)
class KummerParams:
    a: float
    c: float
    x: float

    @property
    def truncated(self) -> bool:
        return _nonpositive_int(self.a) is not None


def kummer_coefficients(a: float, c: float, n_terms: int | None = None) -> np.ndarray:
    """Series coefficients ``(a)_k / ((c)_k k!)``; exactly N+1 of them for ``a = -N``."""
    if _nonpositive_int(c) is not None:
        raise DomainError(f"c = {c} is a pole of 1F1")
    N = _nonpositive_int(a)
    if N is not None:
        n_terms = N + 1
    elif n_terms is None:
        raise DomainError("non-truncating series needs n_terms")
    out = np.empty(n_terms)
    t = 1.0
    for k in range(n_terms):
        out[k] = t
        t *= (a + k) / ((c + k) * (k + 1))
    return out


def kummer_1f1(a, c=None, x=None) -> float:
    """Confluent hypergeometric ``1F1(a; c; x)`` by direct summation.

    Accepts a :class:`KummerParams` or three numbers.  ``a = -N`` gives the
    exact degree-N polynomial; otherwise summation stops once three
    consecutive terms fall below ``1e-16`` of the running sum.  Negative x
    goes through ``e^x 1F1(c-a; c; -x)`` to avoid alternating cancellation.
    """
    if isinstance(a, KummerParams):
        a, c, x = a.a, a.c, a.x
    a, c, x = float(a), float(c), float(x)
    if _nonpositive_int(c) is not None:
        raise DomainError(f"c = {c} is a pole of 1F1")
    if abs(x) > KUMMER_X_MAX:
        raise DomainError(f"|x| = {abs(x)} exceeds the guarded range {KUMMER_X_MAX}")
    N = _nonpositive_int(a)
    if N is not None:
        return float(np.polynomial.polynomial.polyval(x, kummer_coefficients(a, c)))
    if x < 0:
        # Kummer transformation keeps every term positive
        return math.exp(x) * _series(c - a, c, -x)
    return _series(a, c, x)


def _series(a: float, c: float, x: float) -> float:
    N = _nonpositive_int(a)
    if N is not None:
        return float(np.polynomial.polynomial.polyval(x, kummer_coefficients(a, c)))
    total, term, small = 1.0, 1.0, 0
    for k in range(_MAX_TERMS):
        term *= (a + k) * x / ((c + k) * (k + 1))
        total += term
        if abs(term) < 1e-16 * abs(total):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
    raise DomainError("1F1 series failed to converge")


def assoc_legendre(l: int, m: int, z):
    """``P_l^m(z)`` for ``0 <= m <= l`` by upward recursion in l at fixed m."""
    if m < 0 or m > l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    z = np.asarray(z, dtype=float)
    w = np.sqrt(np.clip(1 - z * z, 0.0, None))
    # P_m^m = (-1)^m (2m-1)!! w^m
    pmm = (-1.0) ** m * math.prod(range(1, 2 * m, 2)) * w**m
    if l == m:
        return pmm
    p1 = z * (2 * m + 1) * pmm
    p0 = pmm
    for ll in range(m + 2, l + 1):
        p0, p1 = p1, ((2 * ll - 1) * z * p1 - (ll + m - 1) * p0) / (ll - m)
    return p1


def spherical_harmonic(l: int, m: int, theta, phi):
    if l < 0 or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    val = norm * assoc_legendre(l, am, np.cos(theta)) * np.exp(1j * m * np.asarray(phi))
    if m < 0:
        val = (-1) ** am * val
    return val


def ylm_or_zero(l: int, m: int, theta, phi):
    """``Y_lm`` with the convention that out-of-range indices vanish."""
    if l < 0 or abs(m) > l:
        return np.zeros(np.broadcast(np.asarray(theta), np.asarray(phi)).shape, dtype=complex)
    return spherical_harmonic(l, m, theta, phi)


def recur_a(l: int, m: int) -> float:
    num = (l + m + 1) * (l - m + 1)
    return math.sqrt(num / ((2 * l + 1) * (2 * l + 3))) if num > 0 and l >= 0 else 0.0


def recur_b(l: int, m: int) -> float:
    num = (l + m + 1) * (l + m + 2)
    return math.sqrt(num / ((2 * l + 1) * (2 * l + 3))) if num > 0 and l >= 0 else 0.0


def _grad_formulas(l, m, F, dF, r, theta, phi):
    Y = ylm_or_zero
    lo = dF + (l + 1) * F / r
    hi = dF - l * F / r

    def c(num, den):
        return math.sqrt(num / den) if num > 0 and den > 0 else 0.0

    d2l = (2 * l + 1) * (2 * l - 1)
    u2l = (2 * l + 1) * (2 * l + 3)
    minus = -c((l + m) * (l + m - 1), d2l) * lo * Y(l - 1, m - 1, theta, phi) + c(
        (l - m + 1) * (l - m + 2), u2l
    ) * hi * Y(l + 1, m - 1, theta, phi)
    plus = c((l - m) * (l - m - 1), d2l) * lo * Y(l - 1, m + 1, theta, phi) - c(
        (l + m + 2) * (l + m + 1), u2l
    ) * hi * Y(l + 1, m + 1, theta, phi)
    dz = c((l + m) * (l - m), d2l) * lo * Y(l - 1, m, theta, phi) + c(
        (l + m + 1) * (l - m + 1), u2l
    ) * hi * Y(l + 1, m, theta, phi)
    return minus, plus, dz


def verify_recursions(
    l: int,
    m: int,
    theta: float,
    phi: float,
    r: float = 1.0,
    F=lambda r: r**2,
    dF=lambda r: 2 * r,
    h: float = 1e-5,
) -> dict[str, float]:
    """Residuals of the three angular recursions and the three gradient formulas.

    Gradients of ``F(r) Y_lm`` are taken by fourth-order central differences
    in Cartesian coordinates at the point ``(r, theta, phi)``.
    """
    if l < 0 or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    Y = ylm_or_zero
    ct, st = math.cos(theta), math.sin(theta)
    out = {}
    out["cos"] = abs(
        ct * Y(l, m, theta, phi)
        - recur_a(l, m) * Y(l + 1, m, theta, phi)
        - recur_a(l - 1, m) * Y(l - 1, m, theta, phi)
    )
    e_p, e_m = np.exp(1j * phi), np.exp(-1j * phi)
    out["sin_plus"] = abs(
        st * e_p * Y(l, m, theta, phi)
        - recur_b(l - 1, -(m + 1)) * Y(l - 1, m + 1, theta, phi)
        + recur_b(l, m) * Y(l + 1, m + 1, theta, phi)
    )
    out["sin_minus"] = abs(
        st * e_m * Y(l, m, theta, phi)
        + recur_b(l - 1, m - 1) * Y(l - 1, m - 1, theta, phi)
        - recur_b(l, -m) * Y(l + 1, m - 1, theta, phi)
    )

    x0 = r * np.array([st * math.cos(phi), st * math.sin(phi), ct])

    def f(v):
        rr = float(np.linalg.norm(v))
        th = math.acos(v[2] / rr)
        ph = math.atan2(v[1], v[0])
        return F(rr) * Y(l, m, th, ph)

    grad = []
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        grad.append((-f(x0 + 2 * e) + 8 * f(x0 + e) - 8 * f(x0 - e) + f(x0 - 2 * e)) / (12 * h))
    minus, plus, dz = _grad_formulas(l, m, F(r), dF(r), r, theta, phi)
    out["bas1"] = abs(grad[0] - 1j * grad[1] - minus)
    out["bas2"] = abs(grad[0] + 1j * grad[1] - plus)
    out["bas3"] = abs(grad[2] - dz)
    return {k: float(v) for k, v in out.items()}
