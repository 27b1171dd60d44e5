"""Exception hierarchy shared by every Stratum module."""
from typing import Optional


class StratumError(Exception):
    """Base exception class for Stratum."""
    pass


class ParseError(StratumError):
    """Raised when pipeline specification text cannot be parsed.

    Carries the 1-based line and column of the first offending token.
    """

    def __init__(self, line: int, column: int, message: str, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.message = message
        self.source = source
        prefix = f"{source}:" if source else ""
        super().__init__(f"{prefix}{line}:{column}: {message}")


class FormatError(StratumError):
    """Raised when a JSON input file (topology, plan, registry) is malformed.

    `location` is a JSON path such as ``$.nodes[1].id``.
    """

    def __init__(self, location: str, message: str, source: Optional[str] = None):
        self.location = location
        self.message = message
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{location}: {message}")


class EncodingError(FormatError):
    """Raised when an input file is not valid UTF-8.

    `line` and `column` locate the first undecodable byte.
    """

    def __init__(self, line: int, column: int, reason: str, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__("$", f"{reason} at line {line}, column {column}", source)


class TopologyError(StratumError):
    """Raised when a topology lookup names a node that does not exist."""
    pass


class RegistryError(StratumError):
    """Raised for duplicate registrations and unresolvable model lookups."""
    pass


class PlacementError(StratumError):
    """Raised when a plan references components or nodes that do not exist."""
    pass


class CodegenError(StratumError):
    """Raised when manifests cannot be generated from the given plan."""
    pass


class SimulationError(StratumError):
    """Raised for invalid simulation configuration."""
    pass


class SpecValidationError(StratumError):
    """Raised when a parsed spec fails constraint checking; carries the rendered report lines."""

    def __init__(self, lines):
        self.lines = tuple(lines)
        super().__init__(f"specification has {len(self.lines)} error(s)")


class InfeasibleError(StratumError):
    """Raised when no acceptable placement exists or a given plan breaks constraints.

    ``proven`` is False when only the greedy planner gave up.
    """

    def __init__(self, message: str, proven: bool = True, lines=()):
        self.proven = proven
        self.lines = tuple(lines)
        super().__init__(message)
