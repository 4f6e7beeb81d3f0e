"""
k-Symplectic Package
k-symplectic structures, Omega-Hamiltonian functions and their brackets
"""

from .derived import (
    Covector,
    bracket_theta,
    contract_theta,
    is_admissible,
    phi_theta,
    theta_covectors,
)
from .hamiltonian import (
    OmegaHamiltonian,
    bracket_omega,
    check_hamiltonian,
    check_omega_hamiltonian,
    omega_hamiltonian_field_is_unique,
)
from .structure import (
    KSymplecticStructure,
    StructureReport,
    kernel_dimension_at,
    numeric_rank,
    validate_structure,
)
from .witness import ProductWitness, product_not_hamiltonian_witness

__all__ = [
    'Covector',
    'KSymplecticStructure',
    'OmegaHamiltonian',
    'ProductWitness',
    'StructureReport',
    'bracket_omega',
    'bracket_theta',
    'check_hamiltonian',
    'check_omega_hamiltonian',
    'contract_theta',
    'is_admissible',
    'kernel_dimension_at',
    'numeric_rank',
    'omega_hamiltonian_field_is_unique',
    'phi_theta',
    'theta_covectors',
    'product_not_hamiltonian_witness',
    'validate_structure',
]
