"""Outcome of one engine command."""
from enum import IntEnum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field


class ExitCode(IntEnum):
    OK = 0
    INVALID = 1
    INFEASIBLE = 2
    IO_ERROR = 3


class CommandResult(BaseModel):
    """What a command prints and how the process exits.

    ``stdout`` is machine-readable output only; ``diagnostics`` go to stderr line by line.
    """
    model_config = ConfigDict(frozen=True)

    exit_code: ExitCode = Field(ExitCode.OK, description="Process exit status")
    stdout: str = Field("", description="Machine-readable output")
    diagnostics: Tuple[str, ...] = Field(default_factory=tuple, description="Lines for stderr")

    @property
    def ok(self) -> bool:
        return self.exit_code == ExitCode.OK
