from .parser import parse_spec
from .printer import pretty_print

__all__ = ['parse_spec', 'pretty_print']
