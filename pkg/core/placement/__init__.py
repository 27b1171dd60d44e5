"""Component placement across the resource topology."""
from .schemas import PlacementPlan, PlanMode, FeasibilityVerdict, Violation, ViolationRule
from .tools import (
    PlacementProblem,
    check_feasible,
    plan_exact,
    plan_heuristic,
    serialize_plan,
    load_plan,
    read_plan,
)

__all__ = [
    'PlacementPlan',
    'PlanMode',
    'FeasibilityVerdict',
    'Violation',
    'ViolationRule',
    'PlacementProblem',
    'check_feasible',
    'plan_exact',
    'plan_heuristic',
    'serialize_plan',
    'load_plan',
    'read_plan',
]
