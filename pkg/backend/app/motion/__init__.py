"""
Motion Package
Numerical integration of Lie systems and checks of their constants of motion
"""

from .drift import DriftReport, check_constant, drift_of, values_along
from .integrator import Trajectory, TrajectoryMetadata, integrate
from .invariants import (
    CROSS_RATIO_SOURCE,
    SCHWARZIAN_DEGENERACY,
    SCHWARZIAN_SOURCES,
    LabeledExpr,
    casimir_constant,
    cross_ratio,
    schwarzian_degeneracy,
    schwarzian_invariants,
)
from .superposition import PairingReport, SuperpositionReport, superposition_check
from .system import TDependentField, hamiltonian_curve

__all__ = [
    'CROSS_RATIO_SOURCE',
    'DriftReport',
    'LabeledExpr',
    'PairingReport',
    'SCHWARZIAN_DEGENERACY',
    'SCHWARZIAN_SOURCES',
    'SuperpositionReport',
    'TDependentField',
    'Trajectory',
    'TrajectoryMetadata',
    'casimir_constant',
    'check_constant',
    'drift_of',
    'cross_ratio',
    'hamiltonian_curve',
    'integrate',
    'schwarzian_degeneracy',
    'schwarzian_invariants',
    'superposition_check',
    'values_along',
]
