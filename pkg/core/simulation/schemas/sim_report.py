"""Aggregated results of a simulation run."""
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field

from core.elasticity.schemas.policy import Action
from .sim_state import SimState, TickMetrics


class ComponentSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    peak_utilization: Decimal = Field(..., description="Highest utilization over the run")
    final_queue: Decimal = Field(..., description="Queue length after the last tick")
    total_completions: Decimal = Field(..., description="Messages processed over the run")


class ConservationSummary(BaseModel):
    """Message balance: generated = sink completions + final queues."""
    model_config = ConfigDict(frozen=True)

    generated: Decimal = Field(..., description="External arrivals plus fan-out copies")
    sink_completions: Decimal = Field(..., description="Completions at components without successors")
    final_queues: Decimal = Field(..., description="Messages still queued after the last tick")

    @computed_field
    @property
    def balanced(self) -> bool:
        return self.generated == self.sink_completions + self.final_queues


@dataclass
class SimReport:
    ticks: List[TickMetrics] = field(default_factory=list)
    actions: List[Action] = field(default_factory=list)
    rejected: List[Action] = field(default_factory=list)
    summary: Dict[str, ComponentSummary] = field(default_factory=dict)
    flow_violations: Dict[Tuple[str, str], int] = field(default_factory=dict)
    conservation: Optional[ConservationSummary] = None
    final_state: Optional[SimState] = None

    def utilization(self, component: str) -> List[Decimal]:
        """Utilization series of one component, one entry per tick."""
        return [t.for_component(component).utilization for t in self.ticks]

    def queue(self, component: str) -> List[Decimal]:
        return [t.for_component(component).queue for t in self.ticks]
