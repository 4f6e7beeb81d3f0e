"""
Integration Service Package
RK4 runs of example systems, invariant drift and superposition checks
"""

from .service import IntegrationService, final_states

__all__ = ['IntegrationService', 'final_states']
