"""Heisenberg-picture force operators for the static spin potentials.

Kinetic momentum ``Pi = p - (q/c) A`` has non-commuting components,
``Pi x Pi = i hbar G``.  With the type-II relation ``g hbar k = 1`` the G
field is proportional to the magnetic-like field, ``B = -(hbar/gamma) G``.
Two values of gamma are carried: ``hbar (q/c)(2 + qk/c)`` ("two-plus") and
``hbar (q/c)(qk/c - 2)`` ("commutator"), which is what the commutators give.

All operators are evaluated pointwise in position with explicit spin
matrices; momentum never appears as an operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .gauge import PotentialConfig, eval_potentials, fd_gradient, fd_step, field_strengths
from .spin import MatrixVec3, mv_comm, mv_cross, mv_from_vector, pauli, rdot

__all__ = [
    "ForceDecomposition",
    "PauliTensor",
    "GAMMA_VARIANTS",
    "gamma_factor",
    "g_field",
    "grad_phi",
    "force_type1",
    "force_type1_fd",
    "force_type2",
    "force_type2_direct",
    "phi_a_commutator",
    "pauli_tensor",
]

_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


@dataclass(frozen=True)
class ForceDecomposition:
    """Three-part type-II force; ``total`` is the entrywise sum of the parts."""

    magnetic_part: MatrixVec3
    electric_part: MatrixVec3
    spin_part: MatrixVec3

    @property
    def total(self) -> MatrixVec3:
        return self.magnetic_part + self.electric_part + self.spin_part


class PauliTensor(NamedTuple):
    coupling: np.ndarray  # gamma/(2M) sigma1 . B on the two-spin space
    t12: np.ndarray  # (r.sigma1)(r.sigma2)/r^2
    radial_factor: float  # coupling = radial_factor * t12
    ratio_spread: float  # max deviation of the entrywise ratio from radial_factor
    hermitian_defect: float


def _pos(position) -> tuple[np.ndarray, float]:
    x = np.asarray(position, dtype=float).reshape(3)
    r = float(np.linalg.norm(x))
    if not r > 0:
        raise DomainError("forces are singular at the origin")
    return x, r


def _require(cfg: PotentialConfig, label: str) -> None:
    got = cfg.solution_case().label
    if got != label:
        raise DomainError(f"operation needs case {label}, got case {got}")


GAMMA_VARIANTS = ("two-plus", "commutator")


def gamma_factor(cfg: PotentialConfig, c: float = 1.0, variant: str = "two-plus") -> float:
    """Coupling gamma in ``B = -(hbar/gamma) G``.

    ``"two-plus"`` is ``hbar (q/c)(2 + qk/c)``.  ``"commutator"`` is
    ``hbar (q/c)(qk/c - 2)``, the value forced by ``[p_a, A_b] = -i hbar d_a A_b``
    when ``g hbar k = 1``.
    """
    qk = cfg.q * cfg.k / c
    if variant == "two-plus":
        return cfg.hbar * (cfg.q / c) * (2 + qk)
    if variant == "commutator":
        return cfg.hbar * (cfg.q / c) * (qk - 2)
    raise DomainError(f"unknown gamma variant {variant!r}")


def _grad_A(cfg: PotentialConfig, x: np.ndarray, r: float, S: MatrixVec3) -> list[list[np.ndarray]]:
    # dA[a][b] = d_a A_b for A_b = k eps_bcd x_c S_d / r^2
    k = cfg.k
    Sc = S.comps
    zero = np.zeros_like(Sc[0])
    A_num = [sum((e * x[c_] * Sc[d] for (b_, c_, d), e in _EPS.items() if b_ == b), zero) for b in range(3)]
    out = []
    for a in range(3):
        row = []
        for b in range(3):
            direct = sum((e * Sc[d] for (b_, c_, d), e in _EPS.items() if b_ == b and c_ == a), zero)
            row.append(k * direct / r**2 - 2 * k * x[a] * A_num[b] / r**4)
        out.append(row)
    return out


def g_field(cfg: PotentialConfig, position, c: float = 1.0, method: str = "analytic") -> MatrixVec3:
    """G from ``[Pi_a, Pi_b] = i hbar eps_abc G_c``.

    ``[Pi_a, Pi_b] = i hbar (q/c)(d_a A_b - d_b A_a) + (q/c)^2 [A_a, A_b]``;
    the derivatives of A are analytic or fourth-order central differences.
    """
    x, r = _pos(position)
    rep = cfg.spin()
    cfg.solution_case()
    A, _ = eval_potentials(cfg, x, rep)
    if method == "analytic":
        dA = _grad_A(cfg, x, r, rep.vec)
    elif method in ("finite-difference", "fd"):
        h = fd_step(r)
        dA = []
        for a in range(3):
            e = np.zeros(3)
            e[a] = h
            f = {s: eval_potentials(cfg, x + s * e, rep)[0].as_array() for s in (-2, -1, 1, 2)}
            d = (-f[2] + 8 * f[1] - 8 * f[-1] + f[-2]) / (12 * h)
            dA.append(list(d))
    else:
        raise DomainError(f"unknown method {method!r}")
    qc = cfg.q / c
    Ac = A.comps
    hb = cfg.hbar
    comms = {}
    for a in range(3):
        for b in range(3):
            comms[a, b] = 1j * hb * qc * (dA[a][b] - dA[b][a]) + qc**2 * (Ac[a] @ Ac[b] - Ac[b] @ Ac[a])
    G = [(comms[(cc + 1) % 3, (cc + 2) % 3]) / (1j * hb) for cc in range(3)]
    return MatrixVec3(*G)


def grad_phi(cfg: PotentialConfig, position) -> MatrixVec3:
    """Analytic gradient of ``phi = f1(r) (r.S) + f2(r)``."""
    x, r = _pos(position)
    rep = cfg.spin()
    p = cfg.profiles(r)
    S = rep.vec
    rs = rdot(x, S)
    return MatrixVec3(
        *[p.f1p * x[i] / r * rs + p.f1 * S.comps[i] + p.f2p * x[i] / r * rep.identity for i in range(3)]
    )


def force_type1(cfg: PotentialConfig, position) -> MatrixVec3:
    """``F = -q grad phi`` for the type-I potential."""
    _require(cfg, "I")
    return grad_phi(cfg, position) * (-cfg.q)


def force_type1_fd(cfg: PotentialConfig, position, h: float | None = None) -> MatrixVec3:
    """Central-difference version of :func:`force_type1`."""
    _require(cfg, "I")
    x, r = _pos(position)
    rep = cfg.spin()
    return fd_gradient(lambda y: eval_potentials(cfg, y, rep)[1], x, h or fd_step(r)) * (-cfg.q)


def _velocity(velocity, dim: int) -> MatrixVec3:
    if isinstance(velocity, MatrixVec3):
        return velocity
    return mv_from_vector(velocity, np.eye(dim, dtype=complex))


def phi_a_commutator(cfg: PotentialConfig, position) -> tuple[MatrixVec3, MatrixVec3]:
    """``i [phi, A]`` from matrices and from ``-hbar k kappa1 [r^2 S - (r.S) r] / r^3``."""
    x, r = _pos(position)
    rep = cfg.spin()
    A, phi = eval_potentials(cfg, x, rep)
    numeric = mv_comm(phi, A) * 1j
    S = rep.vec
    rs = rdot(x, S)
    p = cfg.profiles(r)
    # f1 r = kappa1 in case IV; the general form keeps f1 explicit
    pref = -cfg.hbar * cfg.k * p.f1 * r / r**3
    closed = MatrixVec3(*[pref * (r**2 * S.comps[i] - rs * x[i]) for i in range(3)])
    return numeric, closed


def force_type2(
    cfg: PotentialConfig,
    velocity,
    position,
    c: float = 1.0,
    relativistic: bool = False,
    gamma: str = "two-plus",
) -> ForceDecomposition:
    """Magnetic-like, electric-like and spin parts of the type-II force.

    The magnetic part is ``-(gamma / 2 hbar)(v x B - B x v)`` with gamma from
    :func:`gamma_factor`.  ``relativistic=True`` treats v as commuting with B,
    so the symmetrised cross product collapses to ``2 v x B``.
    """
    _require(cfg, "IV")
    x, r = _pos(position)
    rep = cfg.spin()
    E, B = field_strengths(cfg, x)
    v = _velocity(velocity, rep.dim)
    q, k = cfg.q, cfg.k
    pre = -gamma_factor(cfg, c, gamma) / (2 * cfg.hbar)
    if relativistic:
        mag = mv_cross(v, B) * (2 * pre)
    else:
        mag = (mv_cross(v, B) - mv_cross(B, v)) * pre
    S = rep.vec
    rs = rdot(x, S)
    coef = q * cfg.kappa1 * (q * k / c - 1)
    spin = MatrixVec3(*[coef * (S.comps[i] / r - rs * x[i] / r**3) for i in range(3)])
    return ForceDecomposition(mag, E * q, spin)


def force_type2_direct(
    cfg: PotentialConfig, velocity, position, c: float = 1.0, route: str = "fields"
) -> MatrixVec3:
    """Type-II force assembled without the closed-form spin part.

    ``route="fields"``: symmetrised ``v x B`` plus ``qE`` plus
    ``(q/(hbar k))(1 - qk/c) i[phi, A]`` with the commutator taken from matrices.
    ``route="heisenberg"``: ``(v x G - G x v)/2 - q grad phi - (q^2/c)(i/hbar)[phi, A]``
    with G from :func:`g_field`.
    """
    _require(cfg, "IV")
    x, r = _pos(position)
    rep = cfg.spin()
    v = _velocity(velocity, rep.dim)
    q, k, hb = cfg.q, cfg.k, cfg.hbar
    A, phi = eval_potentials(cfg, x, rep)
    iphiA = mv_comm(phi, A) * 1j
    if route == "fields":
        E, B = field_strengths(cfg, x)
        mag = (mv_cross(v, B) - mv_cross(B, v)) * (-(2 + q * k / c) * q / (2 * c))
        return mag + E * q + iphiA * (q / (hb * k) * (1 - q * k / c))
    if route == "heisenberg":
        G = g_field(cfg, x, c=c)
        mag = (mv_cross(v, G) - mv_cross(G, v)) * 0.5
        return mag - grad_phi(cfg, x) * q - iphiA * (q * q / (c * hb))
    raise DomainError(f"unknown route {route!r}")


def pauli_tensor(cfg: PotentialConfig, position, M: float = 1.0, c: float = 1.0) -> PauliTensor:
    """Two-spin coupling ``gamma/(2M) sigma1 . B`` with B sourced by spin 2.

    ``B = k (g hbar k - 2) (r . S2) r / r^4`` and ``S2 = (hbar/2) sigma2``.
    """
    _require(cfg, "IV")
    x, r = _pos(position)
    I2 = np.eye(2)
    sig = pauli()
    s1 = MatrixVec3(*[np.kron(s, I2) for s in sig])
    s2 = MatrixVec3(*[np.kron(I2, s) for s in sig])
    S2 = s2 * (cfg.hbar / 2)
    rs2 = rdot(x, S2)
    B = MatrixVec3(*[cfg.k * (cfg.ghk - 2) * x[i] / r**4 * rs2 for i in range(3)])
    H = (gamma_factor(cfg, c) / (2 * M)) * sum(s1.comps[i] @ B.comps[i] for i in range(3))
    T = rdot(x, s1) @ rdot(x, s2) / r**2
    mask = np.abs(T) > 1e-8 * np.abs(T).max()
    ratios = H[mask] / T[mask]
    factor = complex(np.mean(ratios))
    spread = float(np.max(np.abs(ratios - factor)))
    return PauliTensor(H, T, factor.real, spread, float(np.abs(H - H.conj().T).max()))
