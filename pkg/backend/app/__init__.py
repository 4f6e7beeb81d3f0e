"""
k-symplectic Lie-system toolkit
"""
