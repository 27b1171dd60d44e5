"""Greedy placement: largest components first, cheapest feasible node, no backtracking."""
from typing import Dict, List, Optional

from core.language.schemas.pipeline_spec import PipelineSpec
from core.services.logging import setup_logger
from core.topology.schemas.resource_topology import ResourceTopology
from ..schemas.placement_plan import PlacementPlan, PlanMode
from .feasibility_checker import NodeLoad, PlacementProblem

logger = setup_logger(__name__)


def placement_order(problem: PlacementProblem) -> List[int]:
    """Component indexes by descending replicas x cpu, ties in source order."""
    return sorted(
        range(len(problem.components)),
        key=lambda i: (-(problem.components[i].replicas * problem.components[i].cpu), i),
    )


def plan_heuristic(spec: PipelineSpec, topology: ResourceTopology) -> Optional[PlacementPlan]:
    """Greedy plan, or None when the greedy pass gets stuck.

    None here does not prove the instance infeasible.
    """
    problem = PlacementProblem(spec, topology)
    loads: Dict[str, NodeLoad] = {n.id: NodeLoad() for n in problem.nodes}
    hosts: Dict[str, str] = {}

    for i in placement_order(problem):
        component = problem.components[i]
        chosen = None
        for node in problem.nodes:
            if not problem.tier_allows(component, node):
                continue
            if not problem.fits(component, component.replicas, node, loads[node.id]):
                continue
            if not problem.latency_ok(component, node.id, hosts):
                continue
            cost = problem.marginal_cost(component, component.replicas, node)
            # nodes are visited in id order, so strict < keeps the smallest id on ties
            if chosen is None or cost < chosen[0]:
                chosen = (cost, node)

        if chosen is None:
            logger.info(f"Greedy placement found no node for component '{component.name}'")
            return None
        node = chosen[1]
        loads[node.id].add(component, component.replicas)
        hosts[component.name] = node.id

    replicas = {c.name: c.replicas for c in problem.components}
    return problem.build_plan(hosts, replicas, PlanMode.HEURISTIC)
