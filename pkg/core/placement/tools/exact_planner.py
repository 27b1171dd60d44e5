"""Exact placement by depth-first branch and bound.

Assignments are explored in lexicographic order (components in source order,
nodes by ascending id). A branch is cut when its partial assignment already
breaks a capacity, tier, GPU or latency constraint, or when its partial cost
reaches the incumbent. Partial cost never decreases and any later solution of
equal cost is lexicographically larger, so the first optimum found is the
same plan a full enumeration would select.
"""
from decimal import Decimal
from typing import Dict, Optional

from core.language.schemas.pipeline_spec import PipelineSpec
from core.services.logging import setup_logger
from core.topology.schemas.resource_topology import ResourceTopology
from ..schemas.placement_plan import PlacementPlan, PlanMode
from .feasibility_checker import NodeLoad, PlacementProblem

logger = setup_logger(__name__)


class ExactPlanner:
    """Cost-optimal planner; returns None when no assignment is feasible."""

    def __init__(self, spec: PipelineSpec, topology: ResourceTopology):
        self.problem = PlacementProblem(spec, topology)
        self._loads: Dict[str, NodeLoad] = {}
        self._hosts: Dict[str, str] = {}
        self._best_cost: Optional[Decimal] = None
        self._best: Optional[Dict[str, str]] = None
        self.visited = 0

    def solve(self) -> Optional[PlacementPlan]:
        problem = self.problem
        self._loads = {n.id: NodeLoad() for n in problem.nodes}
        self._hosts = {}
        self._best_cost = None
        self._best = None
        self.visited = 0

        self._search(0, Decimal(0))

        logger.debug(f"Exact search visited {self.visited} partial assignments")
        if self._best is None:
            return None
        replicas = {c.name: c.replicas for c in problem.components}
        return problem.build_plan(self._best, replicas, PlanMode.EXACT)

    def _search(self, depth: int, cost: Decimal) -> None:
        self.visited += 1
        if self._best_cost is not None and cost >= self._best_cost:
            return
        problem = self.problem
        if depth == len(problem.components):
            self._best_cost = cost
            self._best = dict(self._hosts)
            return

        component = problem.components[depth]
        for node in problem.nodes:
            if not problem.tier_allows(component, node):
                continue
            load = self._loads[node.id]
            if not problem.fits(component, component.replicas, node, load):
                continue
            if not problem.latency_ok(component, node.id, self._hosts):
                continue

            load.add(component, component.replicas)
            self._hosts[component.name] = node.id
            self._search(depth + 1, cost + problem.marginal_cost(component, component.replicas, node))
            del self._hosts[component.name]
            load.remove(component, component.replicas)


def plan_exact(spec: PipelineSpec, topology: ResourceTopology) -> Optional[PlacementPlan]:
    """Minimum-cost feasible plan, or None when the instance is infeasible."""
    return ExactPlanner(spec, topology).solve()
