"""
Core modules: settings, logging and the exception hierarchy
"""
