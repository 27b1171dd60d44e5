"""Schema for registered models and evaluation strategies."""
from decimal import Decimal
from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.language.schemas.pipeline_spec import IDENTIFIER_RE
from core.services.error_handling import RegistryError


class ModelRecord(BaseModel):
    """A saved and profiled model version."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., description="Model name")
    version: str = Field(..., description="Model version")
    metrics: Dict[str, Decimal] = Field(default_factory=dict, description="Recorded evaluation metrics")
    size_mb: Decimal = Field(..., gt=0, description="Model artifact size in MB")
    gpu_required: bool = Field(False, description="Whether serving the model needs a GPU")
    created_seq: int = Field(0, ge=0, description="Registration counter")

    @property
    def ref(self) -> str:
        return f"{self.name}@{self.version}"


class Direction(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class EvalStrategy(BaseModel):
    """User-defined rule for picking the best model version."""
    model_config = ConfigDict(frozen=True)

    direction: Direction = Field(..., description="Whether larger or smaller metric values win")
    metric: str = Field(..., min_length=1, description="Metric compared across versions")

    @classmethod
    def parse(cls, text: str) -> "EvalStrategy":
        """Parse ``maximize:accuracy`` / ``minimize:latency_ms``."""
        direction, sep, metric = text.partition(":")
        if not sep or direction not in (d.value for d in Direction) or not IDENTIFIER_RE.fullmatch(metric):
            raise RegistryError(f"invalid strategy '{text}', expected maximize:<metric> or minimize:<metric>")
        return cls(direction=Direction(direction), metric=metric)

    def __str__(self) -> str:
        return f"{self.direction.value}:{self.metric}"


class ModelStore(BaseModel):
    """In-memory view of the registry file."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    models: Tuple[ModelRecord, ...] = Field(default_factory=tuple, description="Records in file order")

    def find(self, name: str, version: str) -> Optional[ModelRecord]:
        for record in self.models:
            if record.name == name and record.version == version:
                return record
        return None

    def versions(self, name: str) -> Tuple[ModelRecord, ...]:
        return tuple(r for r in self.models if r.name == name)
