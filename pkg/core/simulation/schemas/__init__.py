from .sim_state import (
    RateOverride,
    SimConfig,
    ComponentState,
    SimState,
    ComponentTick,
    FlowTick,
    TickMetrics,
    Controller,
)
from .sim_report import SimReport, ComponentSummary, ConservationSummary

__all__ = [
    'RateOverride',
    'SimConfig',
    'ComponentState',
    'SimState',
    'ComponentTick',
    'FlowTick',
    'TickMetrics',
    'Controller',
    'SimReport',
    'ComponentSummary',
    'ConservationSummary',
]
