"""Deterministic fluid simulation of a placed pipeline, one-second ticks."""
from decimal import Decimal
from typing import Dict, List, Optional, Tuple

from core.elasticity.schemas.policy import Action, ActionKind
from core.language.schemas.pipeline_spec import ComponentKind, PipelineSpec
from core.placement.schemas.placement_plan import PlacementPlan
from core.placement.tools.feasibility_checker import PlacementProblem
from core.services.error_handling import SimulationError
from core.services.event_bus import Event, EventBus
from core.services.logging import setup_logger
from core.topology.schemas.resource_topology import ResourceTopology
from core.validation.tools.constraint_checker import flow_graph, topological_order
from ..schemas.sim_report import ComponentSummary, ConservationSummary, SimReport
from ..schemas.sim_state import (
    ComponentState,
    ComponentTick,
    Controller,
    FlowTick,
    RateOverride,
    SimConfig,
    SimState,
    TickMetrics,
)

logger = setup_logger(__name__)

ZERO = Decimal(0)
ONE = Decimal(1)
MS_PER_SECOND = Decimal(1000)


class FluidSimulator:
    """Steps queues forward in topological order so a message can cross the whole chain in one tick."""

    def __init__(self, spec: PipelineSpec, topology: ResourceTopology, bus: Optional[EventBus] = None):
        self.spec = spec
        self.topology = topology
        self.bus = bus or EventBus(keep_history=False)
        self.problem = PlacementProblem(spec, topology)
        self.components = {c.name: c for c in spec.components}
        self.order = topological_order(spec)
        graph = flow_graph(spec)
        self.predecessors: Dict[str, List[str]] = {n: list(graph.predecessors(n)) for n in graph.nodes}
        self.out_degree: Dict[str, int] = {n: graph.out_degree(n) for n in graph.nodes}
        self.latency = topology.latency_table()

    def initial_state(self, plan: PlacementPlan) -> SimState:
        verdict = self.problem.verdict(plan.assignments, plan.replicas)
        if not verdict.feasible:
            raise SimulationError(f"cannot simulate an infeasible plan: {', '.join(r.value for r in verdict.rules())}")
        return SimState(
            tick=0,
            components={
                c.name: ComponentState(name=c.name, host=plan.assignments[c.name], replicas=plan.replicas[c.name])
                for c in self.spec.components
            },
            rates={c.name: c.rate for c in self.spec.components if c.kind == ComponentKind.INGESTION},
        )

    def step(self, state: SimState) -> Tuple[SimState, TickMetrics]:
        """Advance one tick; the input state is left untouched."""
        nxt = state.copy()
        completions: Dict[str, Decimal] = {}
        component_ticks = []

        for name in self.order:
            component = self.components[name]
            cs = nxt.components[name]
            arrivals = nxt.rates.get(name, ZERO)
            inflow = arrivals + sum((completions[p] for p in self.predecessors[name]), ZERO)
            capacity = cs.replicas * component.service_rate
            backlog = cs.queue + inflow
            done = min(backlog, capacity)

            cs.queue = backlog - done
            cs.generated += arrivals
            cs.completed += done
            completions[name] = done
            if self.out_degree[name] > 1:
                nxt.fanout_copies += done * (self.out_degree[name] - 1)

            component_ticks.append(ComponentTick(
                tick=state.tick,
                component=name,
                host=cs.host,
                replicas=cs.replicas,
                in_rate=inflow,
                utilization=min(ONE, backlog / capacity),
                queue=cs.queue,
                completions=done,
            ))

        flow_ticks = []
        for flow in self.spec.flows:
            src, dst = nxt.components[flow.src], nxt.components[flow.dst]
            link = self.latency.get((src.host, dst.host))
            estimate = None
            if link is not None:
                dst_capacity = dst.replicas * self.components[flow.dst].service_rate
                estimate = link + MS_PER_SECOND * dst.queue / dst_capacity
            violation = flow.max_latency_ms is not None and (estimate is None or estimate > flow.max_latency_ms)
            flow_ticks.append(FlowTick(tick=state.tick, src=flow.src, dst=flow.dst,
                                       latency_ms=estimate, violation=violation))

        nxt.tick = state.tick + 1
        return nxt, TickMetrics(tick=state.tick, components=tuple(component_ticks), flows=tuple(flow_ticks))

    def _check_overrides(self, config: SimConfig) -> None:
        for override in config.rate_overrides:
            component = self.components.get(override.component)
            if component is None:
                raise SimulationError(f"override names unknown component '{override.component}'")
            if component.kind != ComponentKind.INGESTION:
                raise SimulationError(f"override target '{override.component}' is not an ingestion component")
            if not 0 <= override.tick < config.ticks:
                raise SimulationError(f"override tick {override.tick} outside [0, {config.ticks})")
            if override.rate < 0:
                raise SimulationError(f"override rate for '{override.component}' must be >= 0")

    def _apply(self, action: Action, state: SimState, report: SimReport) -> SimState:
        if action.kind == ActionKind.SATURATED:
            report.actions.append(action)
            self.bus.publish(Event("controller.action", "controller", action.model_dump(), tick=action.tick))
            return state

        candidate = state.copy()
        target = candidate.components[action.component]
        if action.kind in (ActionKind.SCALE_OUT, ActionKind.SCALE_IN):
            target.replicas = int(action.detail)
        elif action.kind == ActionKind.MIGRATE:
            # the queue travels with the component
            target.host = action.detail
            target.replicas += 1

        verdict = self.problem.verdict(candidate.hosts(), candidate.replica_counts())
        if not verdict.feasible:
            logger.warning(f"Rejected controller action '{action.render()}': "
                           f"{', '.join(r.value for r in verdict.rules())}")
            report.rejected.append(action)
            self.bus.publish(Event("controller.rejected", "controller", action.model_dump(), tick=action.tick))
            return state

        report.actions.append(action)
        self.bus.publish(Event("controller.action", "controller", action.model_dump(), tick=action.tick))
        return candidate

    def run(self, plan: PlacementPlan, config: SimConfig, controller: Optional[Controller] = None) -> SimReport:
        self._check_overrides(config)
        overrides: Dict[int, List[RateOverride]] = {}
        for override in config.rate_overrides:
            overrides.setdefault(override.tick, []).append(override)

        state = self.initial_state(plan)
        report = SimReport()
        for t in range(config.ticks):
            for override in overrides.get(t, []):
                state.rates[override.component] = override.rate
            state, metrics = self.step(state)
            report.ticks.append(metrics)
            self.bus.publish(Event("simulation.tick", "simulator", {"components": len(metrics.components)}, tick=t))

            # no decision after the final tick
            if controller is not None and t < config.ticks - 1:
                for action in controller.decide(report.ticks, state, report.actions):
                    state = self._apply(action, state, report)

        self._summarize(state, report)
        return report

    def _summarize(self, state: SimState, report: SimReport) -> None:
        for name in self.order:
            cs = state.components[name]
            report.summary[name] = ComponentSummary(
                peak_utilization=max((t.for_component(name).utilization for t in report.ticks), default=ZERO),
                final_queue=cs.queue,
                total_completions=cs.completed,
            )
        for flow in self.spec.flows:
            report.flow_violations.setdefault((flow.src, flow.dst), 0)
        for metrics in report.ticks:
            for flow_tick in metrics.flows:
                if flow_tick.violation:
                    report.flow_violations[(flow_tick.src, flow_tick.dst)] += 1

        components = state.components.values()
        report.conservation = ConservationSummary(
            generated=sum((c.generated for c in components), ZERO) + state.fanout_copies,
            sink_completions=sum((c.completed for c in components if self.out_degree[c.name] == 0), ZERO),
            final_queues=sum((c.queue for c in components), ZERO),
        )
        report.final_state = state
        if not report.conservation.balanced:
            logger.error(f"Message conservation violated: {report.conservation}")


def step(state: SimState, spec: PipelineSpec, topology: ResourceTopology) -> Tuple[SimState, TickMetrics]:
    """One tick of the fluid model for a state already bound to hosts and replica counts."""
    return FluidSimulator(spec, topology).step(state)


def run(spec: PipelineSpec, topology: ResourceTopology, plan: PlacementPlan, config: SimConfig,
        controller: Optional[Controller] = None, bus: Optional[EventBus] = None) -> SimReport:
    """Simulate ``config.ticks`` ticks, letting the controller act between ticks.

    Raises:
        SimulationError: for an infeasible plan or an invalid override.
    """
    return FluidSimulator(spec, topology, bus).run(plan, config, controller)
