"""Static spin potentials, their E/B fields and the four Yang-Mills residuals.

Potentials::

    A   = k (r x S) / r^2
    phi = f1(r) (r . S) + f2(r)

with the radial profiles fixed by the solution case of the pair (g, k).
Fields follow ``B = curl A - i g A x A`` and ``E = -grad phi - i g [phi, A]``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np
from scipy.stats import qmc

from .errors import ConstraintViolation, DomainError, NoSolutionError
from .spin import (
    MatrixVec3,
    SpinRep,
    mv_comm,
    mv_cross,
    mv_dot,
    rcross,
    rdot,
    spin_matrices,
)

__all__ = [
    "PotentialConfig",
    "SolutionCase",
    "Profiles",
    "YMResiduals",
    "FORMS",
    "classify_solution",
    "eval_potentials",
    "field_strengths",
    "ym_residuals",
    "maxwell_check",
    "standard_sample_points",
    "fd_step",
    "fd_gradient",
    "fd_jacobian",
]

CASE_TOL = 1e-12


class Profiles(NamedTuple):
    """Radial profiles and their first two derivatives at one radius."""

    f1: float
    f1p: float
    f1pp: float
    f2: float
    f2p: float
    f2pp: float


@dataclass(frozen=True)
class SolutionCase:
    label: str
    f1_form: str
    f2_form: str

    @property
    def solvable(self) -> bool:
        return self.label != "no-solution"


_CASES = {
    "I": SolutionCase("I", "kappa1/r^3 + kappa2", "kappa3/r"),
    "no-solution": SolutionCase("no-solution", "-", "-"),
    "III": SolutionCase("III", "0", "kappa3/r"),
    "IV": SolutionCase("IV", "kappa1/r", "kappa3/r"),
}
_ALIASES = {"I": "I", "II": "no-solution", "NO-SOLUTION": "no-solution", "III": "III", "IV": "IV"}


def classify_solution(g: float, k: float, hbar: float = 1.0) -> SolutionCase:
    """Map (g, k) onto its solution case.

    Raises :class:`ConstraintViolation` when g and k are both non-zero but
    ``g hbar k != 1``.
    """
    if g == 0 and k == 0:
        return _CASES["I"]
    if g == 0:
        return _CASES["no-solution"]
    if k == 0:
        return _CASES["III"]
    resid = g * hbar * k - 1.0
    if abs(resid) > CASE_TOL:
        raise ConstraintViolation(f"case IV needs g*hbar*k = 1, off by {resid:.3e}", resid)
    return _CASES["IV"]


@dataclass(frozen=True)
class PotentialConfig:
    """Couplings of one potential family.

    ``case`` forces a profile shape; with ``strict=False`` the shape is used
    even when (g, k) violate its constraint (negative controls).
    """

    g: float = 0.0
    k: float = 0.0
    kappa1: float = 0.0
    kappa2: float = 0.0
    kappa3: float = 0.0
    q: float = 1.0
    s: float = 0.5
    hbar: float = 1.0
    case: str | None = None
    strict: bool = True

    @classmethod
    def type1(cls, kappa1=1.0, kappa2=0.0, kappa3=1.0, **kw) -> "PotentialConfig":
        return cls(g=0.0, k=0.0, kappa1=kappa1, kappa2=kappa2, kappa3=kappa3, **kw)

    @classmethod
    def type2(cls, k=1.0, kappa1=1.0, kappa3=1.0, hbar=1.0, **kw) -> "PotentialConfig":
        return cls(g=1.0 / (hbar * k), k=k, kappa1=kappa1, kappa3=kappa3, hbar=hbar, **kw)

    def with_spin(self, s) -> "PotentialConfig":
        return replace(self, s=s)

    @property
    def ghk(self) -> float:
        return self.g * self.hbar * self.k

    def solution_case(self) -> SolutionCase:
        if self.case is not None:
            label = _ALIASES.get(str(self.case).upper())
            if label is None:
                raise DomainError(f"unknown case {self.case!r}")
            if self.strict:
                natural = classify_solution(self.g, self.k, self.hbar)
                if natural.label != label:
                    raise ConstraintViolation(
                        f"(g, k) = ({self.g}, {self.k}) is case {natural.label}, not {label}",
                        self.ghk - 1.0,
                    )
            sol = _CASES[label]
        else:
            sol = classify_solution(self.g, self.k, self.hbar)
        if not sol.solvable:
            raise NoSolutionError("g = 0 with k != 0 admits no static spin-potential solution")
        if self.strict:
            if self.kappa2 != 0 and sol.label != "I":
                raise DomainError("kappa2 is only admissible in case I")
            if self.kappa1 != 0 and sol.label == "III":
                raise DomainError("case III forces f1 = 0; kappa1 must vanish")
        return sol

    def spin(self) -> SpinRep:
        return spin_matrices(self.s, self.hbar)

    def profiles(self, r: float) -> Profiles:
        label = self.solution_case().label
        k1, k2, k3 = self.kappa1, self.kappa2, self.kappa3
        f2, f2p, f2pp = k3 / r, -k3 / r**2, 2 * k3 / r**3
        if label == "I":
            return Profiles(k1 / r**3 + k2, -3 * k1 / r**4, 12 * k1 / r**5, f2, f2p, f2pp)
        if label == "III":
            return Profiles(0.0, 0.0, 0.0, f2, f2p, f2pp)
        return Profiles(k1 / r, -k1 / r**2, 2 * k1 / r**3, f2, f2p, f2pp)


def _position(position) -> tuple[np.ndarray, float]:
    x = np.asarray(position, dtype=float).reshape(3)
    r = float(np.linalg.norm(x))
    if not r > 0:
        raise DomainError("fields are singular at the origin")
    return x, r


def eval_potentials(cfg: PotentialConfig, position, rep: SpinRep | None = None):
    """Return ``(A, phi)`` at one position."""
    x, r = _position(position)
    rep = rep or cfg.spin()
    S = rep.vec
    p = cfg.profiles(r)
    A = rcross(x, S) * (cfg.k / r**2)
    phi = p.f1 * rdot(x, S) + p.f2 * rep.identity
    return A, phi


def _closed_form_coeffs(cfg: PotentialConfig, r: float):
    # E = -a (r.S) r - b r + c S ,  B = beta (r.S) r
    G = cfg.ghk
    p = cfg.profiles(r)
    a = p.f1p / r + G * p.f1 / r**2
    ap = p.f1pp / r - p.f1p / r**2 + G * p.f1p / r**2 - 2 * G * p.f1 / r**3
    b = p.f2p / r
    bp = p.f2pp / r - p.f2p / r**2
    c = (G - 1) * p.f1
    cp = (G - 1) * p.f1p
    beta = cfg.k * (G - 2) / r**4
    betap = -4 * beta / r
    return a, ap, b, bp, c, cp, beta, betap


def _analytic_fields(cfg, x, r, rep):
    a, _, b, _, c, _, beta, _ = _closed_form_coeffs(cfg, r)
    S = rep.vec
    rs = rdot(x, S)
    I = rep.identity
    E = MatrixVec3(*[-a * rs * x[i] - b * x[i] * I + c * S.comps[i] for i in range(3)])
    B = MatrixVec3(*[beta * rs * x[i] for i in range(3)])
    return E, B


def fd_step(r: float) -> float:
    return 1e-4 * max(1.0, r)


def fd_gradient(fun: Callable[[np.ndarray], np.ndarray], x, h: float) -> MatrixVec3:
    """Fourth-order central-difference gradient of a matrix-valued scalar field."""
    x = np.asarray(x, dtype=float)
    out = []
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        d = (-fun(x + 2 * e) + 8 * fun(x + e) - 8 * fun(x - e) + fun(x - 2 * e)) / (12 * h)
        out.append(d)
    return MatrixVec3(*out)


def fd_jacobian(fun: Callable[[np.ndarray], MatrixVec3], x, h: float) -> list[MatrixVec3]:
    """``J[j]`` holds the derivative of every component along axis j."""
    x = np.asarray(x, dtype=float)
    cols = []
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        d = (
            -fun(x + 2 * e).as_array()
            + 8 * fun(x + e).as_array()
            - 8 * fun(x - e).as_array()
            + fun(x - 2 * e).as_array()
        ) / (12 * h)
        cols.append(MatrixVec3.from_array(d))
    return cols


def _fd_jacobian_pair(fun, x, h):
    # one field evaluation per stencil point, shared by the E and B jacobians
    cache: dict[tuple[int, int], tuple[MatrixVec3, MatrixVec3]] = {}
    for j in range(3):
        for step in (-2, -1, 1, 2):
            e = np.zeros(3)
            e[j] = step * h
            cache[j, step] = fun(x + e)
    out = []
    for which in (0, 1):
        cols = []
        for j in range(3):
            f = {st: cache[j, st][which].as_array() for st in (-2, -1, 1, 2)}
            d = (-f[2] + 8 * f[1] - 8 * f[-1] + f[-2]) / (12 * h)
            cols.append(MatrixVec3.from_array(d))
        out.append(cols)
    return out[0], out[1]


def _div(J: list[MatrixVec3]) -> np.ndarray:
    return J[0].x + J[1].y + J[2].z


def _curl(J: list[MatrixVec3]) -> MatrixVec3:
    return MatrixVec3(J[1].z - J[2].y, J[2].x - J[0].z, J[0].y - J[1].x)


def _fd_fields(cfg, x, rep, h):
    g = cfg.g
    A, phi = eval_potentials(cfg, x, rep)
    dA, dphi = [], []
    for j in range(3):
        vals = {}
        for step in (-2, -1, 1, 2):
            e = np.zeros(3)
            e[j] = step * h
            a_, p_ = eval_potentials(cfg, x + e, rep)
            vals[step] = (a_.as_array(), p_)
        dA.append((-vals[2][0] + 8 * vals[1][0] - 8 * vals[-1][0] + vals[-2][0]) / (12 * h))
        dphi.append((-vals[2][1] + 8 * vals[1][1] - 8 * vals[-1][1] + vals[-2][1]) / (12 * h))
    JA = [MatrixVec3.from_array(d) for d in dA]
    E = -MatrixVec3(*dphi) - 1j * g * mv_comm(phi, A)
    B = _curl(JA) - 1j * g * mv_cross(A, A)
    return E, B


def field_strengths(cfg: PotentialConfig, position, method: str = "analytic", h: float | None = None):
    """Return ``(E, B)``; ``method`` is ``"analytic"`` or ``"finite-difference"``."""
    x, r = _position(position)
    rep = cfg.spin()
    cfg.solution_case()
    if method == "analytic":
        return _analytic_fields(cfg, x, r, rep)
    if method in ("finite-difference", "fd"):
        return _fd_fields(cfg, x, rep, h or fd_step(r))
    raise DomainError(f"unknown method {method!r}")


class YMResiduals(NamedTuple):
    div_e: float
    curl_e: float
    div_b: float
    curl_b: float

    def max(self) -> float:
        return max(self)


FORMS = ("covariant", "reversed")


def _residuals(g, A, phi, E, B, divE, curlE, divB, curlB, form) -> YMResiduals:
    # "covariant": self-interaction sign fixed by D_mu F^{mu nu} = 0 and the
    # E/B definitions above; "reversed": the opposite overall sign.
    if form not in FORMS:
        raise DomainError(f"unknown residual form {form!r}")
    ig = (-1j if form == "covariant" else 1j) * g
    r1 = divE + ig * (mv_dot(A, E) - mv_dot(E, A))
    r2 = -curlE + (mv_comm(phi, B) - mv_cross(A, E) - mv_cross(E, A)) * ig
    r3 = divB + ig * (mv_dot(A, B) - mv_dot(B, A))
    r4 = curlB + (mv_comm(phi, E) + mv_cross(A, B) + mv_cross(B, A)) * ig
    return YMResiduals(
        float(np.linalg.norm(r1)), r2.norm(), float(np.linalg.norm(r3)), r4.norm()
    )


def ym_residuals(
    cfg: PotentialConfig,
    position,
    method: str = "analytic",
    h: float | None = None,
    form: str = "covariant",
) -> YMResiduals:
    """Frobenius norms of the four static Yang-Mills residuals at one point.

    Residuals, with ``s = -1`` for ``form="covariant"`` and ``s = +1`` for
    ``form="reversed"``::

        div E + s i g (A.E - E.A)
        -curl E + s i g ([phi, B] - A x E - E x A)
        div B + s i g (A.B - B.A)
        curl B + s i g ([phi, E] + A x B + B x A)

    Only the covariant sign follows from ``D_mu F^{mu nu} = 0`` together with
    ``B = curl A - i g A x A`` and ``E = -grad phi - i g [phi, A]``.
    """
    x, r = _position(position)
    rep = cfg.spin()
    cfg.solution_case()
    A, phi = eval_potentials(cfg, x, rep)
    if method == "analytic":
        S = rep.vec
        rs = rdot(x, S)
        rxS = rcross(x, S)
        a, ap, b, bp, c, cp, beta, betap = _closed_form_coeffs(cfg, r)
        E, B = _analytic_fields(cfg, x, r, rep)
        divE = -(ap * r + 4 * a) * rs - (bp * r + 3 * b) * rep.identity + (cp / r) * rs
        curlE = rxS * (a + cp / r)
        divB = (betap * r + 4 * beta) * rs
        curlB = rxS * (-beta)
    elif method in ("finite-difference", "fd"):
        h = h or fd_step(r)
        E, B = _fd_fields(cfg, x, rep, h)
        JE, JB = _fd_jacobian_pair(lambda y: _fd_fields(cfg, y, rep, h), x, h)
        divE, curlE, divB, curlB = _div(JE), _curl(JE), _div(JB), _curl(JB)
    else:
        raise DomainError(f"unknown method {method!r}")
    return _residuals(cfg.g, A, phi, E, B, divE, curlE, divB, curlB, form)


def maxwell_check(kappa: float, position, h: float | None = None) -> tuple[float, float]:
    """FD divergence and curl norms of the Coulomb field ``kappa r_hat / r^2``."""
    x, r = _position(position)
    if kappa == 0:
        return 0.0, 0.0
    I1 = np.eye(1, dtype=complex)

    def field(y):
        ry = np.linalg.norm(y)
        v = kappa * y / ry**3
        return MatrixVec3(v[0] * I1, v[1] * I1, v[2] * I1)

    J = fd_jacobian(field, x, h or fd_step(r))
    return float(np.abs(_div(J)).max()), _curl(J).norm()


def standard_sample_points(n: int = 64, rmin: float = 0.5, rmax: float = 5.0, cone: float = 0.05) -> np.ndarray:
    """Deterministic Halton points in a spherical shell, away from the z axis.

    Radius is uniform in volume; directions within ``cone`` radians of +z or
    -z are skipped.
    """
    sampler = qmc.Halton(d=3, scramble=False)
    sampler.fast_forward(1)
    pts: list[np.ndarray] = []
    while len(pts) < n:
        u = sampler.random(4 * n)
        for u1, u2, u3 in u:
            r = (rmin**3 + u1 * (rmax**3 - rmin**3)) ** (1 / 3)
            ct = 2 * u2 - 1
            th = np.arccos(ct)
            if th < cone or th > np.pi - cone:
                continue
            ph = 2 * np.pi * u3
            st = np.sin(th)
            pts.append(r * np.array([st * np.cos(ph), st * np.sin(ph), ct]))
            if len(pts) == n:
                break
    return np.array(pts)
