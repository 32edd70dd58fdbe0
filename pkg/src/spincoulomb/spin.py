"""Spin representations and order-preserving algebra on operator-valued 3-vectors.

Every field in the package is a triple of small dense complex matrices.  The
helpers here never reorder factors, so non-commuting products such as
``A x A`` come out right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "SpinRep",
    "MatrixVec3",
    "spin_matrices",
    "pauli",
    "mv_cross",
    "mv_dot",
    "comm",
    "mv_comm",
    "mv_from_vector",
    "mv_zero",
    "rdot",
    "rcross",
]


def _as_half_integer(s) -> float:
    try:
        two_s = 2.0 * float(s)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"spin must be a number, got {s!r}") from exc
    if not np.isfinite(two_s) or abs(two_s - round(two_s)) > 1e-12:
        raise DomainError(f"spin must be a half-integer, got {s!r}")
    if two_s < 0:
        raise DomainError(f"spin must be non-negative, got {s!r}")
    return round(two_s) / 2


@dataclass(frozen=True)
class SpinRep:
    """Spin-s matrices ``Sx, Sy, Sz`` (already multiplied by hbar) and the identity."""

    s: float
    dim: int
    Sx: np.ndarray
    Sy: np.ndarray
    Sz: np.ndarray
    identity: np.ndarray
    hbar: float = 1.0

    @property
    def vec(self) -> "MatrixVec3":
        return MatrixVec3(self.Sx, self.Sy, self.Sz)

    def casimir(self) -> np.ndarray:
        return self.Sx @ self.Sx + self.Sy @ self.Sy + self.Sz @ self.Sz


def spin_matrices(s, hbar: float = 1.0) -> SpinRep:
    """Ladder-operator construction of the spin-s representation.

    Basis ordered by descending ``m`` so that s=1/2 gives hbar/2 times the
    Pauli matrices.
    """
    sf = _as_half_integer(s)
    dim = int(round(2 * sf)) + 1
    ms = np.array([sf - j for j in range(dim)])
    # <m+1|S+|m> = sqrt(s(s+1) - m(m+1))
    splus = np.zeros((dim, dim), dtype=complex)
    for j in range(1, dim):
        m = ms[j]
        splus[j - 1, j] = np.sqrt(sf * (sf + 1) - m * (m + 1))
    sminus = splus.conj().T
    sx = hbar * (splus + sminus) / 2
    sy = hbar * (splus - sminus) / 2j
    sz = hbar * np.diag(ms).astype(complex)
    return SpinRep(sf, dim, sx, sy, sz, np.eye(dim, dtype=complex), hbar)


def pauli() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three Pauli matrices."""
    rep = spin_matrices(0.5, hbar=2.0)
    return rep.Sx, rep.Sy, rep.Sz


@dataclass(frozen=True)
class MatrixVec3:
    """Operator-valued 3-vector; components are square matrices of equal size."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        shapes = {np.shape(self.x), np.shape(self.y), np.shape(self.z)}
        if len(shapes) != 1:
            raise DimensionError(f"component shapes differ: {sorted(shapes)}")
        shape = shapes.pop()
        if len(shape) != 2 or shape[0] != shape[1]:
            raise DimensionError(f"components must be square matrices, got {shape}")

    @property
    def dim(self) -> int:
        return np.shape(self.x)[0]

    @property
    def comps(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.stack(self.comps)

    @classmethod
    def from_array(cls, arr) -> "MatrixVec3":
        arr = np.asarray(arr)
        return cls(arr[0], arr[1], arr[2])

    def __add__(self, other: "MatrixVec3") -> "MatrixVec3":
        _check(self, other)
        return MatrixVec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "MatrixVec3") -> "MatrixVec3":
        _check(self, other)
        return MatrixVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "MatrixVec3":
        return MatrixVec3(-self.x, -self.y, -self.z)

    def __mul__(self, c) -> "MatrixVec3":
        return MatrixVec3(c * self.x, c * self.y, c * self.z)

    __rmul__ = __mul__

    def lmul(self, m: np.ndarray) -> "MatrixVec3":
        """Matrix times each component, ``m @ v_i``."""
        return MatrixVec3(m @ self.x, m @ self.y, m @ self.z)

    def rmul(self, m: np.ndarray) -> "MatrixVec3":
        """Each component times matrix, ``v_i @ m``."""
        return MatrixVec3(self.x @ m, self.y @ m, self.z @ m)

    def dagger(self) -> "MatrixVec3":
        return MatrixVec3(self.x.conj().T, self.y.conj().T, self.z.conj().T)

    def norm(self) -> float:
        """Frobenius norm over all three components."""
        return float(np.linalg.norm(self.as_array().ravel()))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.as_array())))

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return (self - self.dagger()).max_abs() <= atol


def _check(a: MatrixVec3, b: MatrixVec3) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _check_mat(x: np.ndarray, y: np.ndarray) -> None:
    if np.shape(x) != np.shape(y):
        raise DimensionError(f"dimension mismatch: {np.shape(x)} vs {np.shape(y)}")


def mv_cross(a: MatrixVec3, b: MatrixVec3) -> MatrixVec3:
    """(a x b)_i = eps_ijk a_j b_k with a always on the left."""
    _check(a, b)
    return MatrixVec3(
        a.y @ b.z - a.z @ b.y,
        a.z @ b.x - a.x @ b.z,
        a.x @ b.y - a.y @ b.x,
    )


def mv_dot(a: MatrixVec3, b: MatrixVec3) -> np.ndarray:
    _check(a, b)
    return a.x @ b.x + a.y @ b.y + a.z @ b.z


def comm(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    _check_mat(x, y)
    return x @ y - y @ x


def mv_comm(m: np.ndarray, v: MatrixVec3) -> MatrixVec3:
    """Componentwise commutator [m, v_i]."""
    return MatrixVec3(comm(m, v.x), comm(m, v.y), comm(m, v.z))


def mv_zero(dim: int) -> MatrixVec3:
    z = np.zeros((dim, dim), dtype=complex)
    return MatrixVec3(z, z.copy(), z.copy())


def mv_from_vector(r, identity: np.ndarray) -> MatrixVec3:
    """Numeric 3-vector promoted to identity-valued components."""
    r = np.asarray(r, dtype=float)
    return MatrixVec3(r[0] * identity, r[1] * identity, r[2] * identity)


def rdot(r, v: MatrixVec3) -> np.ndarray:
    """r . v for a numeric vector r."""
    return r[0] * v.x + r[1] * v.y + r[2] * v.z


def rcross(r, v: MatrixVec3) -> MatrixVec3:
    """r x v for a numeric vector r."""
    return MatrixVec3(
        r[1] * v.z - r[2] * v.y,
        r[2] * v.x - r[0] * v.z,
        r[0] * v.y - r[1] * v.x,
    )
