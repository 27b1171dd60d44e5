"""Capacity, tier and latency checks shared by both planners and the controller."""
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Dict, List, Mapping, Optional, Tuple

from core.language.schemas.pipeline_spec import Component, PipelineSpec, TierHint
from core.services.error_handling import PlacementError
from core.services.storage.json_codec import format_decimal
from core.topology.schemas.resource_topology import NodeDesc, ResourceTopology
from ..schemas.placement_plan import (
    FeasibilityVerdict,
    PlacementPlan,
    PlanMode,
    Violation,
    ViolationRule,
)


@dataclass
class NodeLoad:
    """Resources committed on one node."""
    cpu: Decimal = Decimal(0)
    mem: int = 0
    gpus: int = 0

    def add(self, component: Component, replicas: int) -> None:
        self.cpu += replicas * component.cpu
        self.mem += replicas * component.mem
        if component.needs_gpu:
            self.gpus += replicas

    def remove(self, component: Component, replicas: int) -> None:
        self.cpu -= replicas * component.cpu
        self.mem -= replicas * component.mem
        if component.needs_gpu:
            self.gpus -= replicas


@dataclass(frozen=True)
class BoundedFlow:
    src: str
    dst: str
    max_latency_ms: Decimal


class PlacementProblem:
    """Precomputed view of a spec and topology for repeated feasibility queries."""

    def __init__(self, spec: PipelineSpec, topology: ResourceTopology):
        self.spec = spec
        self.topology = topology
        self.components: Tuple[Component, ...] = spec.components
        self.component_by_name: Dict[str, Component] = {c.name: c for c in spec.components}
        # Candidate order for every tie-break: node id ascending
        self.nodes: Tuple[NodeDesc, ...] = tuple(sorted(topology.nodes, key=lambda n: n.id))
        self.node_by_id: Dict[str, NodeDesc] = {n.id: n for n in topology.nodes}
        self.latency = topology.latency_table()
        self.bounded_flows: Tuple[BoundedFlow, ...] = tuple(
            BoundedFlow(f.src, f.dst, f.max_latency_ms) for f in spec.flows if f.max_latency_ms is not None
        )
        self.flows_by_component: Dict[str, List[BoundedFlow]] = {c.name: [] for c in spec.components}
        for flow in self.bounded_flows:
            self.flows_by_component.setdefault(flow.src, []).append(flow)
            if flow.dst != flow.src:
                self.flows_by_component.setdefault(flow.dst, []).append(flow)

    @property
    def search_space(self) -> int:
        """Number of complete assignments a full enumeration visits."""
        return len(self.nodes) ** len(self.components)

    def tier_allows(self, component: Component, node: NodeDesc) -> bool:
        return component.tier_hint == TierHint.ANY or component.tier_hint.value == node.tier.value

    def fits(self, component: Component, replicas: int, node: NodeDesc, load: NodeLoad) -> bool:
        """Whether ``replicas`` more copies of the component fit on top of ``load``."""
        if load.cpu + replicas * component.cpu > node.cpu_cores:
            return False
        if load.mem + replicas * component.mem > node.mem_mb:
            return False
        if component.needs_gpu and load.gpus + replicas > node.gpus:
            return False
        return True

    def latency_ok(self, component: Component, node_id: str, hosts: Mapping[str, str]) -> bool:
        """Latency bounds between the component (placed on node_id) and already placed neighbours."""
        for flow in self.flows_by_component.get(component.name, []):
            other = flow.dst if flow.src == component.name else flow.src
            if other not in hosts:
                continue
            pair = (node_id, hosts[other]) if flow.src == component.name else (hosts[other], node_id)
            observed = self.latency.get(pair)
            if observed is None or observed > flow.max_latency_ms:
                return False
        return True

    def marginal_cost(self, component: Component, replicas: int, node: NodeDesc) -> Decimal:
        return replicas * component.cpu * node.cost_per_core_hour

    def plan_cost(self, assignments: Mapping[str, str], replicas: Mapping[str, int]) -> Decimal:
        total = Decimal(0)
        for c in self.components:
            total += self.marginal_cost(c, replicas[c.name], self.node_by_id[assignments[c.name]])
        return total

    def build_plan(self, assignments: Mapping[str, str], replicas: Mapping[str, int], mode: PlanMode) -> PlacementPlan:
        ordered = {c.name: assignments[c.name] for c in self.components}
        counts = {c.name: replicas[c.name] for c in self.components}
        return PlacementPlan(
            assignments=ordered,
            replicas=counts,
            cost_per_hour=self.plan_cost(ordered, counts),
            mode=mode,
        )

    def verdict(self, assignments: Mapping[str, str], replicas: Mapping[str, int]) -> FeasibilityVerdict:
        """Evaluate every constraint over a complete assignment."""
        unknown_components = sorted(set(assignments) - set(self.component_by_name))
        if unknown_components:
            raise PlacementError(f"plan assigns unknown component(s): {', '.join(unknown_components)}")
        missing = [c.name for c in self.components if c.name not in assignments]
        if missing:
            raise PlacementError(f"plan does not assign component(s): {', '.join(missing)}")
        unknown_nodes = sorted({n for n in assignments.values() if n not in self.node_by_id})
        if unknown_nodes:
            raise PlacementError(f"plan references unknown node(s): {', '.join(unknown_nodes)}")

        loads: Dict[str, NodeLoad] = {n.id: NodeLoad() for n in self.topology.nodes}
        for c in self.components:
            loads[assignments[c.name]].add(c, replicas.get(c.name, c.replicas))

        violations: List[Violation] = []
        for node in self.topology.nodes:
            load = loads[node.id]
            if load.cpu > node.cpu_cores:
                violations.append(Violation(rule=ViolationRule.CAP_CPU, subject=node.id,
                                            detail=f"cpu {format_decimal(load.cpu)} > {format_decimal(node.cpu_cores)}"))
            if load.mem > node.mem_mb:
                violations.append(Violation(rule=ViolationRule.CAP_MEM, subject=node.id,
                                            detail=f"mem {load.mem} > {node.mem_mb}"))
            if load.gpus > node.gpus:
                violations.append(Violation(rule=ViolationRule.CAP_GPU, subject=node.id,
                                            detail=f"gpus {load.gpus} > {node.gpus}"))

        for c in self.components:
            node = self.node_by_id[assignments[c.name]]
            if not self.tier_allows(c, node):
                violations.append(Violation(rule=ViolationRule.TIER, subject=c.name,
                                            detail=f"requires {c.tier_hint.value}, placed on {node.tier.value} node {node.id}"))

        for flow in self.bounded_flows:
            pair = (assignments[flow.src], assignments[flow.dst])
            observed = self.latency.get(pair)
            subject = f"{flow.src}->{flow.dst}"
            if observed is None:
                violations.append(Violation(rule=ViolationRule.UNREACHABLE, subject=subject,
                                            detail=f"no link between {pair[0]} and {pair[1]}"))
            elif observed > flow.max_latency_ms:
                violations.append(Violation(rule=ViolationRule.LATENCY, subject=subject,
                                            detail=f"{format_decimal(observed)} ms > {format_decimal(flow.max_latency_ms)} ms"))

        return FeasibilityVerdict(violations=tuple(violations))


def check_feasible(spec: PipelineSpec, topology: ResourceTopology, plan: PlacementPlan,
                   problem: Optional[PlacementProblem] = None) -> FeasibilityVerdict:
    """Check a plan against node capacities, tier hints and flow latency bounds.

    Raises:
        PlacementError: if the plan names unknown components or nodes.
    """
    problem = problem or PlacementProblem(spec, topology)
    return problem.verdict(plan.assignments, plan.replicas)
