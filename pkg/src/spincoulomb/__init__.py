"""Spin-dependent Coulomb potentials: gauge fields, spectra, orbits and forces."""

from . import angular, dirac, errors, forces, gauge, orbit, radial, specfun, spin
from .dirac import ALPHA, dirac_energy_standard, dirac_energy_type2, kcr, z_bound
from .errors import (
    CollisionError,
    ConstraintViolation,
    ConvergenceError,
    DimensionError,
    DomainError,
    NoBoundStateError,
    NoSolutionError,
    SpinCoulombError,
    SupercriticalError,
)
from .forces import ForceDecomposition, force_type1, force_type2, g_field, pauli_tensor
from .gauge import PotentialConfig, eval_potentials, field_strengths, ym_residuals
from .radial import SpectrumLine, fd_radial_oracle, nonrel_energy_type1, nonrel_energy_type2
from .spin import MatrixVec3, SpinRep, spin_matrices

__all__ = [
    "angular",
    "dirac",
    "errors",
    "forces",
    "gauge",
    "orbit",
    "radial",
    "specfun",
    "spin",
    "ALPHA",
    "dirac_energy_standard",
    "dirac_energy_type2",
    "kcr",
    "z_bound",
    "CollisionError",
    "ConstraintViolation",
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "NoBoundStateError",
    "NoSolutionError",
    "SpinCoulombError",
    "SupercriticalError",
    "ForceDecomposition",
    "force_type1",
    "force_type2",
    "g_field",
    "pauli_tensor",
    "PotentialConfig",
    "eval_potentials",
    "field_strengths",
    "ym_residuals",
    "SpectrumLine",
    "fd_radial_oracle",
    "nonrel_energy_type1",
    "nonrel_energy_type2",
    "MatrixVec3",
    "SpinRep",
    "spin_matrices",
]
