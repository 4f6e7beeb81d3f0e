"""
Lie Algebra Package
Structure constants, Lie closures and stability of distributions
"""

from .closure import expand_in_basis, lie_closure, sample_points, stacked_values, structure_constants
from .model import LieAlgebraModel, format_expansion
from .stability import is_stable_distribution

__all__ = [
    'LieAlgebraModel',
    'expand_in_basis',
    'format_expansion',
    'is_stable_distribution',
    'lie_closure',
    'sample_points',
    'stacked_values',
    'structure_constants',
]
