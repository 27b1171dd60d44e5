"""Error handling service module."""
from .error_handler import (
    StratumError,
    ParseError,
    FormatError,
    EncodingError,
    TopologyError,
    RegistryError,
    PlacementError,
    CodegenError,
    SimulationError,
    SpecValidationError,
    InfeasibleError,
)

__all__ = [
    'StratumError',
    'ParseError',
    'FormatError',
    'EncodingError',
    'TopologyError',
    'RegistryError',
    'PlacementError',
    'CodegenError',
    'SimulationError',
    'SpecValidationError',
    'InfeasibleError',
]
