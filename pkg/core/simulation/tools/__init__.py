from .fluid_simulator import FluidSimulator, step, run
from .report_writer import metrics_csv, flows_csv, action_log, render_outputs, write_outputs

__all__ = [
    'FluidSimulator',
    'step',
    'run',
    'metrics_csv',
    'flows_csv',
    'action_log',
    'render_outputs',
    'write_outputs',
]
