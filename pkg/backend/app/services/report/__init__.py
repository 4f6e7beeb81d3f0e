"""
Report Service Package
Report cache, aggregate summaries and text/JSON rendering
"""

from .service import FORMATS, NO_RESULTS, ReportService

__all__ = ['FORMATS', 'NO_RESULTS', 'ReportService']
