from .placement_plan import PlanMode, PlacementPlan, ViolationRule, Violation, FeasibilityVerdict

__all__ = ['PlanMode', 'PlacementPlan', 'ViolationRule', 'Violation', 'FeasibilityVerdict']
