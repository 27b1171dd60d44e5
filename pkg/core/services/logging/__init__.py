"""Logging service module."""
from .logging_service import setup_logger, log_exception, report_line

__all__ = ['setup_logger', 'log_exception', 'report_line']
