"""Planar classical two-body Coulomb motion.

``M r'' = q kappa r_hat / r^2`` is integrated with classic RK4 and the
trajectory is compared against the conic ``1/r = (1 + e cos(theta - theta0)) / p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CollisionError, DomainError

__all__ = [
    "OrbitState",
    "Trajectory",
    "ConicFit",
    "integrate_orbit",
    "integrate_orbits",
    "eccentricity",
    "fit_conic",
    "state_from_invariants",
    "kepler_period",
]

COLLISION_RADIUS = 1e-6


@dataclass(frozen=True)
class OrbitState:
    position: tuple[float, float]
    velocity: tuple[float, float]
    M: float = 1.0
    qkappa: float = -1.0

    def energy(self) -> float:
        x, y = self.position
        vx, vy = self.velocity
        return 0.5 * self.M * (vx * vx + vy * vy) + self.qkappa / np.hypot(x, y)

    def angular_momentum(self) -> float:
        x, y = self.position
        vx, vy = self.velocity
        return self.M * (x * vy - y * vx)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    xy: np.ndarray
    vxy: np.ndarray
    energy: np.ndarray
    ell: np.ndarray
    max_rel_dE: float
    max_rel_dl: float

    @property
    def r(self) -> np.ndarray:
        return np.hypot(self.xy[:, 0], self.xy[:, 1])

    @property
    def theta(self) -> np.ndarray:
        return np.arctan2(self.xy[:, 1], self.xy[:, 0])


@dataclass(frozen=True)
class ConicFit:
    e: float
    p: float
    theta0: float
    rms: float


def integrate_orbit(init: OrbitState, dt: float, steps: int, stride: int = 1) -> Trajectory:
    """RK4 integration of ``M r'' = q kappa r_hat / r^2``.

    ``stride`` thins the stored samples, not the steps.  The returned ledger
    holds the largest relative drift of E and ell seen at any step.
    """
    if dt <= 0:
        raise DomainError("dt must be positive")
    M, qk = float(init.M), float(init.qkappa)
    if M <= 0:
        raise DomainError("mass must be positive")
    x, y = map(float, init.position)
    vx, vy = map(float, init.velocity)
    if math.hypot(x, y) <= 0:
        raise DomainError("initial radius must be positive")

    c = qk / M
    h2, h6 = 0.5 * dt, dt / 6.0
    E0, L0 = init.energy(), init.angular_momentum()
    Es = abs(E0) if E0 else 1.0
    Ls = abs(L0) if L0 else 1.0
    n_out = steps // stride + 1
    buf = np.empty((n_out, 4))
    buf[0] = (x, y, vx, vy)
    max_dE = max_dl = 0.0
    j = 1
    sqrt = math.sqrt
    # plain float arithmetic: per-step numpy overhead dominates at this size
    for i in range(1, steps + 1):
        r = sqrt(x * x + y * y)
        f = c / (r * r * r)
        ax1, ay1 = f * x, f * y
        x2, y2 = x + h2 * vx, y + h2 * vy
        vx2, vy2 = vx + h2 * ax1, vy + h2 * ay1
        r = sqrt(x2 * x2 + y2 * y2)
        f = c / (r * r * r)
        ax2, ay2 = f * x2, f * y2
        x3, y3 = x + h2 * vx2, y + h2 * vy2
        vx3, vy3 = vx + h2 * ax2, vy + h2 * ay2
        r = sqrt(x3 * x3 + y3 * y3)
        f = c / (r * r * r)
        ax3, ay3 = f * x3, f * y3
        x4, y4 = x + dt * vx3, y + dt * vy3
        vx4, vy4 = vx + dt * ax3, vy + dt * ay3
        r = sqrt(x4 * x4 + y4 * y4)
        f = c / (r * r * r)
        ax4, ay4 = f * x4, f * y4
        x0, y0 = x, y
        x += h6 * (vx + 2 * vx2 + 2 * vx3 + vx4)
        y += h6 * (vy + 2 * vy2 + 2 * vy3 + vy4)
        vx += h6 * (ax1 + 2 * ax2 + 2 * ax3 + ax4)
        vy += h6 * (ay1 + 2 * ay2 + 2 * ay3 + ay4)
        r = sqrt(x * x + y * y)
        # closest approach of the chord between step ends catches jumps over the origin
        dx, dy = x - x0, y - y0
        seg = dx * dx + dy * dy
        u = min(1.0, max(0.0, -(x0 * dx + y0 * dy) / seg)) if seg > 0 else 0.0
        if min(r, math.hypot(x0 + u * dx, y0 + u * dy)) < COLLISION_RADIUS:
            raise CollisionError(f"r = {r:.3e} at step {i}, t = {i * dt:.6g}")
        dE = abs(0.5 * M * (vx * vx + vy * vy) + qk / r - E0) / Es
        dl = abs(M * (x * vy - y * vx) - L0) / Ls
        if dE > max_dE:
            max_dE = dE
        if dl > max_dl:
            max_dl = dl
        if i % stride == 0:
            buf[j] = (x, y, vx, vy)
            j += 1
    buf = buf[:j]
    xy, vxy = buf[:, :2].copy(), buf[:, 2:].copy()
    r = np.hypot(xy[:, 0], xy[:, 1])
    energy = 0.5 * M * np.sum(vxy**2, axis=1) + qk / r
    ell = M * (xy[:, 0] * vxy[:, 1] - xy[:, 1] * vxy[:, 0])
    ts = np.arange(j) * stride * dt
    return Trajectory(ts, xy, vxy, energy, ell, max_dE, max_dl)


def integrate_orbits(inits, dts, steps: int, stride: int = 1) -> list[Trajectory]:
    """Independent trajectories; the order of results follows ``inits``."""
    dts = np.broadcast_to(np.asarray(dts, dtype=float), (len(inits),))
    return [integrate_orbit(s, float(dt), steps, stride) for s, dt in zip(inits, dts)]


def eccentricity(E: float, ell: float, M: float = 1.0, qkappa: float = -1.0) -> tuple[float, float]:
    """Return ``(e, p)`` of the attractive Kepler conic for energy E and angular momentum ell."""
    if qkappa >= 0:
        raise DomainError("eccentricity-energy relation needs an attractive coupling")
    if ell == 0:
        raise DomainError("radial orbit: angular momentum must be non-zero")
    disc = 1 + 2 * ell**2 * E / (M * qkappa**2)
    if disc < -1e-14:
        raise DomainError(f"energy below the circular minimum (discriminant {disc:.3e})")
    return float(np.sqrt(max(disc, 0.0))), ell**2 / (M * abs(qkappa))


def fit_conic(traj: Trajectory | np.ndarray) -> ConicFit:
    """Linear least squares of ``1/r = a + b cos(theta) + c sin(theta)``."""
    xy = traj.xy if isinstance(traj, Trajectory) else np.asarray(traj, dtype=float)
    if len(xy) < 100:
        raise DomainError("need at least 100 trajectory points")
    r = np.hypot(xy[:, 0], xy[:, 1])
    th = np.arctan2(xy[:, 1], xy[:, 0])
    if np.ptp(np.unwrap(th)) < 1e-6:
        raise DomainError("degenerate radial trajectory")
    X = np.column_stack([np.ones_like(th), np.cos(th), np.sin(th)])
    (a, b, c), *_ = np.linalg.lstsq(X, 1 / r, rcond=None)
    rms = float(np.sqrt(np.mean((X @ np.array([a, b, c]) - 1 / r) ** 2)))
    amp = float(np.hypot(b, c))
    # repulsive branch has a < 0: 1/r = (-1 + e cos)/p
    return ConicFit(amp / abs(a), 1 / abs(a), float(np.arctan2(c, b)), rms)


def state_from_invariants(E: float, ell: float, M: float = 1.0, qkappa: float = -1.0) -> OrbitState:
    """Initial state at pericentre for a given energy and angular momentum."""
    if ell == 0:
        raise DomainError("angular momentum must be non-zero")
    p = ell**2 / (M * abs(qkappa))
    disc = 1 + 2 * ell**2 * E / (M * qkappa**2)
    if disc < 0:
        raise DomainError("energy below the circular minimum")
    e = np.sqrt(disc)
    rp = p / (1 + e) if qkappa < 0 else p / (e - 1)
    return OrbitState((rp, 0.0), (0.0, ell / (M * rp)), M, qkappa)


def kepler_period(E: float, M: float = 1.0, qkappa: float = -1.0) -> float:
    if E >= 0 or qkappa >= 0:
        raise DomainError("period defined only for bound attractive orbits")
    a = abs(qkappa) / (2 * abs(E))
    return float(2 * np.pi * np.sqrt(M * a**3 / abs(qkappa)))
