"""Schema for constraint-checker results."""
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field


class ValidationCode(str, Enum):
    E_EMPTY = "E_EMPTY"
    E_DUPLICATE = "E_DUPLICATE"
    E_RANGE = "E_RANGE"
    E_MISSING_MODEL = "E_MISSING_MODEL"
    E_UNEXPECTED_MODEL = "E_UNEXPECTED_MODEL"
    E_CYCLE = "E_CYCLE"
    E_UNREACHABLE = "E_UNREACHABLE"
    E_SELF_LOOP = "E_SELF_LOOP"
    E_UNKNOWN_COMPONENT = "E_UNKNOWN_COMPONENT"


class ValidationIssue(BaseModel):
    """One failed rule."""
    model_config = ConfigDict(frozen=True)

    code: ValidationCode = Field(..., description="Rule that failed")
    subject: str = Field(..., description="Component (or pipeline) the failure concerns")
    message: str = Field(..., description="Human-readable explanation")

    def render(self) -> str:
        return f"{self.code.value} {self.subject}: {self.message}"


class ValidationReport(BaseModel):
    """All failures found in a spec, ordered by source position."""
    model_config = ConfigDict(frozen=True)

    errors: Tuple[ValidationIssue, ...] = Field(default_factory=tuple, description="Failures in source order")

    @computed_field
    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> Tuple[ValidationCode, ...]:
        return tuple(e.code for e in self.errors)
