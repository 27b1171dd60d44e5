"""Command-line entry point."""
from .command_line import build_parser, main

__all__ = ['build_parser', 'main']
