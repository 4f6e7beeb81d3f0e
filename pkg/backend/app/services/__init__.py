"""
Services Package
Verification, integration and reporting services with their orchestrator
"""

from .integration import IntegrationService
from .main_service import MainService
from .report import ReportService
from .verification import VerificationService

__all__ = ['IntegrationService', 'MainService', 'ReportService', 'VerificationService']
