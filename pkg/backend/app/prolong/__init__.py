"""
Prolongation Package
Diagonal prolongation of functions, fields and two-forms to product charts
"""

from .product import (
    ProductChart,
    copy_name,
    product_chart,
    prolong_field,
    prolong_function,
    prolong_two_form,
)

__all__ = [
    'ProductChart',
    'copy_name',
    'product_chart',
    'prolong_field',
    'prolong_function',
    'prolong_two_form',
]
