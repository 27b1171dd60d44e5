"""Schema for elasticity policies and the actions they emit."""
from decimal import Decimal
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.settings import (
    POLICY_COOLDOWN,
    POLICY_HIGH_UTIL,
    POLICY_HIGH_WINDOW,
    POLICY_LOW_UTIL,
    POLICY_LOW_WINDOW,
    POLICY_MIN_REPLICAS,
)


class PolicyConfig(BaseModel):
    """Threshold and hysteresis settings for the controller."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    high_util: Decimal = Field(POLICY_HIGH_UTIL, gt=0, le=1, description="Scale-out threshold")
    low_util: Decimal = Field(POLICY_LOW_UTIL, ge=0, lt=1, description="Scale-in threshold")
    high_window: int = Field(POLICY_HIGH_WINDOW, ge=1, description="Consecutive hot ticks before scaling out")
    low_window: int = Field(POLICY_LOW_WINDOW, ge=1, description="Consecutive cold ticks before scaling in")
    cooldown: int = Field(POLICY_COOLDOWN, ge=0, description="Minimum ticks between actions on one component")
    min_replicas: int = Field(POLICY_MIN_REPLICAS, ge=1, description="Replica floor")

    @model_validator(mode="after")
    def _thresholds_ordered(self) -> "PolicyConfig":
        if self.low_util >= self.high_util:
            raise ValueError("low_util must be below high_util")
        return self

    @property
    def history_length(self) -> int:
        return max(self.high_window, self.low_window)


class ActionKind(str, Enum):
    SCALE_OUT = "scale_out"
    SCALE_IN = "scale_in"
    MIGRATE = "migrate"
    SATURATED = "saturated"


class Action(BaseModel):
    """One controller decision, effective from ``tick`` onwards."""
    model_config = ConfigDict(frozen=True)

    tick: int = Field(..., ge=0, description="Tick the action takes effect")
    component: str = Field(..., description="Component acted upon")
    kind: ActionKind = Field(..., description="Action kind")
    detail: str = Field(..., description="New replica count, destination node, or saturation reason")

    def render(self) -> str:
        return f"t={self.tick} {self.component} {self.kind.value} {self.detail}"
