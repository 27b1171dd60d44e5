"""Fluid simulation of deployed pipelines."""
from .schemas import SimConfig, RateOverride, SimState, SimReport, TickMetrics
from .tools import FluidSimulator, step, run, render_outputs, write_outputs

__all__ = [
    'SimConfig',
    'RateOverride',
    'SimState',
    'SimReport',
    'TickMetrics',
    'FluidSimulator',
    'step',
    'run',
    'render_outputs',
    'write_outputs',
]
