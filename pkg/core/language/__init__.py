"""Pipeline specification language: schema, parser and canonical printer."""
from .tools import parse_spec, pretty_print

__all__ = ['parse_spec', 'pretty_print']
