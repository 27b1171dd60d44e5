"""Constraint checking for parsed pipeline specs."""
from .tools import validate, topological_order

__all__ = ['validate', 'topological_order']
