"""Threshold and hysteresis elasticity policy: scale out, scale in, migrate or report saturation."""
from decimal import Decimal
from typing import TYPE_CHECKING, Callable, Dict, List, Mapping, Optional, Sequence

from core.language.schemas.pipeline_spec import Component, PipelineSpec
from core.placement.tools.feasibility_checker import NodeLoad, PlacementProblem
from core.services.logging import setup_logger
from core.topology.schemas.resource_topology import ResourceTopology
from ..schemas.policy import Action, ActionKind, PolicyConfig

if TYPE_CHECKING:
    # runtime import would be circular
    from core.simulation.schemas.sim_state import SimState, TickMetrics

logger = setup_logger(__name__)


class ElasticityController:
    """Decides each component locally, in source order, against a working copy of hosts and replicas."""

    def __init__(self, spec: PipelineSpec, topology: ResourceTopology, policy: Optional[PolicyConfig] = None):
        self.spec = spec
        self.policy = policy or PolicyConfig()
        self.problem = PlacementProblem(spec, topology)
        # migration candidates: cheapest first, then id
        self.by_price = sorted(self.problem.nodes, key=lambda n: (n.cost_per_core_hour, n.id))

    def _window(self, history: Sequence["TickMetrics"], name: str, size: int) -> List[Decimal]:
        observed = [m.for_component(name).utilization for m in history[-size:]]
        return [Decimal(0)] * (size - len(observed)) + observed

    def _sustained(self, history: Sequence["TickMetrics"], name: str, size: int,
                   predicate: Callable[[Decimal], bool]) -> bool:
        return all(predicate(u) for u in self._window(history, name, size))

    def _loads(self, hosts: Mapping[str, str], replicas: Mapping[str, int]) -> Dict[str, NodeLoad]:
        loads = {n.id: NodeLoad() for n in self.problem.nodes}
        for c in self.spec.components:
            loads[hosts[c.name]].add(c, replicas[c.name])
        return loads

    def _relieve(self, tick: int, component: Component, hosts: Dict[str, str], replicas: Dict[str, int]) -> Action:
        problem = self.problem
        loads = self._loads(hosts, replicas)
        current = problem.node_by_id[hosts[component.name]]
        count = replicas[component.name]

        if problem.fits(component, 1, current, loads[current.id]):
            return Action(tick=tick, component=component.name, kind=ActionKind.SCALE_OUT, detail=str(count + 1))

        others = {name: host for name, host in hosts.items() if name != component.name}
        for node in self.by_price:
            if node.id == current.id or not problem.tier_allows(component, node):
                continue
            if not problem.fits(component, count + 1, node, loads[node.id]):
                continue
            if not problem.latency_ok(component, node.id, others):
                continue
            return Action(tick=tick, component=component.name, kind=ActionKind.MIGRATE, detail=node.id)

        load = loads[current.id]
        if component.needs_gpu and load.gpus + 1 > current.gpus:
            reason = "gpu"
        elif load.cpu + component.cpu > current.cpu_cores:
            reason = "cpu"
        else:
            reason = "mem"
        return Action(tick=tick, component=component.name, kind=ActionKind.SATURATED, detail=reason)

    def decide(self, history: Sequence["TickMetrics"], state: "SimState",
               action_log: Sequence[Action] = ()) -> List[Action]:
        """Actions taking effect at ``state.tick``, at most one per component."""
        policy = self.policy
        tick = state.tick
        last_action = {a.component: a.tick for a in action_log}
        hosts = state.hosts()
        replicas = state.replica_counts()

        actions = []
        for component in self.spec.components:
            name = component.name
            if name in last_action and tick - last_action[name] < policy.cooldown:
                continue

            action = None
            if self._sustained(history, name, policy.high_window, lambda u: u > policy.high_util):
                action = self._relieve(tick, component, hosts, replicas)
            elif (replicas[name] > policy.min_replicas
                  and self._sustained(history, name, policy.low_window, lambda u: u < policy.low_util)):
                action = Action(tick=tick, component=name, kind=ActionKind.SCALE_IN, detail=str(replicas[name] - 1))

            if action is None:
                continue
            if action.kind in (ActionKind.SCALE_OUT, ActionKind.SCALE_IN):
                replicas[name] = int(action.detail)
            elif action.kind == ActionKind.MIGRATE:
                hosts[name] = action.detail
                replicas[name] += 1
            logger.info(f"Controller decided {action.render()}")
            actions.append(action)
        return actions


def decide(history: Sequence["TickMetrics"], state: "SimState", spec: PipelineSpec, topology: ResourceTopology,
           policy: Optional[PolicyConfig] = None, action_log: Sequence[Action] = ()) -> List[Action]:
    """Pure policy evaluation over observed ticks and the actions taken so far."""
    return ElasticityController(spec, topology, policy).decide(history, state, action_log)
