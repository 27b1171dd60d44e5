"""Command orchestration across all modules."""
from .schemas import ExitCode, CommandResult
from .deployment_engine import DeploymentEngine, exit_code_for, diagnostics_for

__all__ = ['ExitCode', 'CommandResult', 'DeploymentEngine', 'exit_code_for', 'diagnostics_for']
