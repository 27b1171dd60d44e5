"""Simulation configuration, mutable run state and per-tick metrics."""
from dataclasses import dataclass, replace
from decimal import Decimal
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.elasticity.schemas.policy import Action


class RateOverride(BaseModel):
    """Change an ingestion component's arrival rate from ``tick`` onwards."""
    model_config = ConfigDict(frozen=True)

    component: str = Field(..., description="Ingestion component")
    tick: int = Field(..., description="First tick at the new rate")
    rate: Decimal = Field(..., description="New arrival rate in msg/s")

    @classmethod
    def parse(cls, text: str) -> "RateOverride":
        """Parse ``component:tick:rate``; raises ValueError on malformed text."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"invalid override '{text}', expected component:tick:rate")
        rate = Decimal(parts[2])
        if not rate.is_finite():
            raise ValueError(f"invalid override rate '{parts[2]}'")
        return cls(component=parts[0], tick=int(parts[1]), rate=rate)


class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    ticks: int = Field(..., ge=1, description="Number of one-second ticks")
    rate_overrides: Tuple[RateOverride, ...] = Field(default_factory=tuple, description="Rate change events")


@dataclass
class ComponentState:
    name: str
    host: str
    replicas: int
    queue: Decimal = Decimal(0)
    generated: Decimal = Decimal(0)
    completed: Decimal = Decimal(0)


@dataclass
class SimState:
    """State before ``tick`` is simulated."""
    tick: int
    components: Dict[str, ComponentState]
    rates: Dict[str, Decimal]
    fanout_copies: Decimal = Decimal(0)

    def copy(self) -> "SimState":
        return SimState(
            tick=self.tick,
            components={name: replace(c) for name, c in self.components.items()},
            rates=dict(self.rates),
            fanout_copies=self.fanout_copies,
        )

    def hosts(self) -> Dict[str, str]:
        return {name: c.host for name, c in self.components.items()}

    def replica_counts(self) -> Dict[str, int]:
        return {name: c.replicas for name, c in self.components.items()}


@dataclass(frozen=True)
class ComponentTick:
    tick: int
    component: str
    host: str
    replicas: int
    in_rate: Decimal
    utilization: Decimal
    queue: Decimal
    completions: Decimal


@dataclass(frozen=True)
class FlowTick:
    tick: int
    src: str
    dst: str
    latency_ms: Optional[Decimal]
    violation: bool


@dataclass(frozen=True)
class TickMetrics:
    """Everything observed during one tick, components in topological order."""
    tick: int
    components: Tuple[ComponentTick, ...]
    flows: Tuple[FlowTick, ...]

    def for_component(self, name: str) -> Optional[ComponentTick]:
        for metric in self.components:
            if metric.component == name:
                return metric
        return None


class Controller(Protocol):
    """Anything that turns observed ticks into actions for the next tick."""

    def decide(self, history: Sequence[TickMetrics], state: SimState,
               action_log: Sequence[Action]) -> List[Action]:
        ...
