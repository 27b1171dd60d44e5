from .validation_report import ValidationCode, ValidationIssue, ValidationReport

__all__ = ['ValidationCode', 'ValidationIssue', 'ValidationReport']
