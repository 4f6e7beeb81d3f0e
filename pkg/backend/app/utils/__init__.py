"""
Utility functions for result files
"""
