from .feasibility_checker import PlacementProblem, NodeLoad, check_feasible
from .exact_planner import ExactPlanner, plan_exact
from .greedy_planner import plan_heuristic, placement_order
from .plan_io import serialize_plan, load_plan, read_plan, check_plan_matches

__all__ = [
    'PlacementProblem',
    'NodeLoad',
    'check_feasible',
    'ExactPlanner',
    'plan_exact',
    'plan_heuristic',
    'placement_order',
    'serialize_plan',
    'load_plan',
    'read_plan',
    'check_plan_matches',
]
