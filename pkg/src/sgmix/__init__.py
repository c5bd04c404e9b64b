"""Solver library for heterogeneous binary stiffened-gas mixture flows.

Exact mixture closure (quadratic pressure equation, temperature, volume
fractions, speed of sound with checkable identities), QGD/QHD-regularized
explicit 1D finite-difference schemes, the seven published shock-tube
benchmarks and an L1 convergence study harness.
"""

from .cases import CaseSpec, build_initial, case_from_config, case_to_config, make_case
from .convergence import ErrorReport, error_study
from .eos import (
    Closure,
    ConservedState,
    GasPair,
    GasParams,
    MixtureCoeffs,
    PressureDifferential,
    PressureSolution,
    WoodRelation,
    closure,
    mixture_coefficients,
    pressure_differential,
    pressure_quadratic,
    primitive_to_conserved,
    rational_residual,
    speed_bounds,
    speed_of_sound,
    speed_of_sound_alt,
    volume_fraction_from_mass,
    wood_relation,
)
from .grid import HalfField, Mesh, NodeField, avg, avg_star, delta, delta_star, fill_copy_boundary
from .kernels import BACKEND
from .scheme import (
    MeshState,
    RunResult,
    SchemeConfig,
    StepDiagnostics,
    coefficients,
    conserved_totals,
    energy_identity_residuals,
    regularizers,
    run,
    step,
    time_step,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CaseSpec",
    "Closure",
    "ConservedState",
    "ErrorReport",
    "GasPair",
    "GasParams",
    "HalfField",
    "Mesh",
    "MeshState",
    "MixtureCoeffs",
    "NodeField",
    "PressureDifferential",
    "PressureSolution",
    "RunResult",
    "SchemeConfig",
    "StepDiagnostics",
    "WoodRelation",
    "avg",
    "avg_star",
    "build_initial",
    "case_from_config",
    "case_to_config",
    "closure",
    "coefficients",
    "conserved_totals",
    "delta",
    "delta_star",
    "energy_identity_residuals",
    "error_study",
    "fill_copy_boundary",
    "make_case",
    "mixture_coefficients",
    "pressure_differential",
    "pressure_quadratic",
    "primitive_to_conserved",
    "rational_residual",
    "regularizers",
    "run",
    "speed_bounds",
    "speed_of_sound",
    "speed_of_sound_alt",
    "step",
    "time_step",
    "volume_fraction_from_mass",
    "wood_relation",
]
