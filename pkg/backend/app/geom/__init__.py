"""
Geometry Package
Charts, vector fields and differential forms with their exterior calculus
"""

from .calculus import (
    closedness_defect,
    exterior_derivative_0,
    exterior_derivative_1,
    interior_product,
    is_closed,
    jacobi_defect,
    lie_bracket,
    lie_derivative_2,
    wedge,
)
from .chart import Chart
from .fields import OneForm, TwoForm, VectorField, require_same_chart

__all__ = [
    'Chart',
    'OneForm',
    'TwoForm',
    'VectorField',
    'closedness_defect',
    'exterior_derivative_0',
    'exterior_derivative_1',
    'interior_product',
    'is_closed',
    'jacobi_defect',
    'lie_bracket',
    'lie_derivative_2',
    'require_same_chart',
    'wedge',
]
