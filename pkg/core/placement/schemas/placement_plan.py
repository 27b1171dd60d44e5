"""Schema for placement plans and feasibility verdicts."""
from decimal import Decimal
from enum import Enum
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field


class PlanMode(str, Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"


class PlacementPlan(BaseModel):
    """Component -> node assignment; all replicas of a component share one node."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    assignments: Dict[str, str] = Field(..., description="Component name -> node id")
    replicas: Dict[str, int] = Field(..., description="Component name -> replica count")
    cost_per_hour: Decimal = Field(..., ge=0, description="Sum of replicas x cpu x node core-hour price")
    mode: PlanMode = Field(..., description="Solver that produced the plan")

    def to_document(self) -> dict:
        return {
            "mode": self.mode.value,
            "cost_per_hour": self.cost_per_hour,
            "assignments": dict(self.assignments),
            "replicas": dict(self.replicas),
        }


class ViolationRule(str, Enum):
    CAP_CPU = "CAP_CPU"
    CAP_MEM = "CAP_MEM"
    CAP_GPU = "CAP_GPU"
    TIER = "TIER"
    LATENCY = "LATENCY"
    UNREACHABLE = "UNREACHABLE"


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    rule: ViolationRule = Field(..., description="Constraint that failed")
    subject: str = Field(..., description="Node, component or flow (src->dst) concerned")
    detail: str = Field("", description="Human-readable numbers behind the failure")


class FeasibilityVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    violations: Tuple[Violation, ...] = Field(default_factory=tuple, description="Failed constraints")

    @computed_field
    @property
    def feasible(self) -> bool:
        return not self.violations

    def rules(self) -> Tuple[ViolationRule, ...]:
        return tuple(v.rule for v in self.violations)

    def to_document(self) -> dict:
        return {
            "feasible": self.feasible,
            "violations": [
                {"rule": v.rule.value, "subject": v.subject, "detail": v.detail}
                for v in self.violations
            ],
        }
