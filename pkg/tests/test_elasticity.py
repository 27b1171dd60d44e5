from decimal import Decimal

import pytest
from pydantic import ValidationError

from core.elasticity.schemas.policy import Action, ActionKind, PolicyConfig
from core.elasticity.tools.elasticity_controller import ElasticityController, decide
from core.language.schemas.pipeline_spec import ComponentKind, Flow, PipelineSpec
from core.placement.schemas.placement_plan import PlacementPlan, PlanMode
from core.services.event_bus import EventBus
from core.simulation.schemas.sim_state import RateOverride, SimConfig
from core.simulation.tools.fluid_simulator import FluidSimulator, run
from core.topology.schemas.resource_topology import ResourceTopology
from tests.conftest import chain_spec, make_component, make_link, make_node

OVERLOAD = SimConfig(ticks=10, rate_overrides=(RateOverride.parse("camera_ingest:0:60"),))


def _co_located(spec: PipelineSpec, node: str = "n1") -> PlacementPlan:
    return PlacementPlan(
        assignments={c.name: node for c in spec.components},
        replicas={c.name: c.replicas for c in spec.components},
        cost_per_hour=Decimal(0),
        mode=PlanMode.EXACT,
    )


def _history(spec, topology, ticks):
    simulator = FluidSimulator(spec, topology)
    state = simulator.initial_state(_co_located(spec))
    history = []
    for _ in range(ticks):
        state, metrics = simulator.step(state)
        history.append(metrics)
    return history, state


def test_three_hot_ticks_scale_out(single_node_topology):
    spec = chain_spec(rate="60", service_rate="40")
    history, state = _history(spec, single_node_topology, 3)
    assert decide(history, state, spec, single_node_topology) == [
        Action(tick=3, component="worker", kind=ActionKind.SCALE_OUT, detail="2"),
    ]


def test_short_history_is_padded_with_idle_ticks(single_node_topology):
    spec = chain_spec(rate="60", service_rate="40")
    history, state = _history(spec, single_node_topology, 2)
    assert decide(history, state, spec, single_node_topology) == []


def test_cooldown_blocks_repeat_actions(single_node_topology):
    spec = chain_spec(rate="60", service_rate="40")
    history, state = _history(spec, single_node_topology, 3)
    recent = [Action(tick=1, component="worker", kind=ActionKind.SATURATED, detail="cpu")]
    assert decide(history, state, spec, single_node_topology, action_log=recent) == []
    elapsed = [Action(tick=0, component="worker", kind=ActionKind.SATURATED, detail="cpu")]
    policy = PolicyConfig(cooldown=3)
    assert len(decide(history, state, spec, single_node_topology, policy, elapsed)) == 1


def test_overload_saturates_on_gpu(smart_spec, topology, smart_plan):
    report = run(smart_spec, topology, smart_plan, OVERLOAD, ElasticityController(smart_spec, topology))
    assert [a.render() for a in report.actions] == [
        "t=3 recognizer saturated gpu",
        "t=8 recognizer saturated gpu",
    ]
    assert report.rejected == []
    assert report.queue("recognizer") == [Decimal(20 * (t + 1)) for t in range(10)]


def _saturation_ticks(ticks: int, window: int, cooldown: int) -> list:
    """Replay of a component that is hot every tick and can never grow."""
    fired, last = [], None
    for t in range(1, ticks):
        if t < window or (last is not None and t - last < cooldown):
            continue
        fired.append(t)
        last = t
    return fired


@pytest.mark.parametrize("ticks, window, cooldown", [(10, 3, 5), (30, 3, 5), (20, 1, 0), (25, 4, 7)])
def test_saturation_cadence(smart_spec, topology, smart_plan, ticks, window, cooldown):
    policy = PolicyConfig(high_window=window, cooldown=cooldown)
    config = SimConfig(ticks=ticks, rate_overrides=(RateOverride.parse("camera_ingest:0:60"),))
    report = run(smart_spec, topology, smart_plan, config, ElasticityController(smart_spec, topology, policy))
    assert [a.tick for a in report.actions] == _saturation_ticks(ticks, window, cooldown)
    assert {(a.component, a.kind, a.detail) for a in report.actions} == {
        ("recognizer", ActionKind.SATURATED, "gpu")}


def test_relief_topology_scales_out(smart_spec, relief_topology, smart_plan):
    report = run(smart_spec, relief_topology, smart_plan, OVERLOAD,
                 ElasticityController(smart_spec, relief_topology))
    assert [a.render() for a in report.actions] == ["t=3 recognizer scale_out 2"]
    utilization = report.utilization("recognizer")
    assert utilization[:6] == [Decimal(1)] * 6
    assert utilization[6:] == [Decimal("0.75")] * 4
    assert report.queue("recognizer")[5:] == [Decimal(0)] * 5
    assert report.final_state.components["recognizer"].replicas == 2
    assert report.conservation.balanced


def test_quiescent_pipeline_never_acts(single_node_topology):
    spec = chain_spec(rate="0")
    report = run(spec, single_node_topology, _co_located(spec), SimConfig(ticks=50),
                 ElasticityController(spec, single_node_topology))
    assert report.actions == []


def test_stable_smart_traffic_never_acts(smart_spec, topology, smart_plan):
    report = run(smart_spec, topology, smart_plan, SimConfig(ticks=40), ElasticityController(smart_spec, topology))
    assert report.actions == []


def test_idle_replicas_scale_in_down_to_the_floor(single_node_topology):
    spec = PipelineSpec(
        name="idle",
        components=(
            make_component("src", ComponentKind.INGESTION, rate=Decimal(5), service_rate=Decimal(100)),
            make_component("worker", service_rate=Decimal(10), replicas=3),
        ),
        flows=(Flow(src="src", dst="worker"),),
    )
    report = run(spec, single_node_topology, _co_located(spec), SimConfig(ticks=30),
                 ElasticityController(spec, single_node_topology))
    assert [a.render() for a in report.actions] == ["t=10 worker scale_in 2", "t=15 worker scale_in 1"]
    assert report.final_state.components["worker"].replicas == 1


def test_single_hot_tick_with_short_window(single_node_topology):
    spec = chain_spec(rate="60", service_rate="40")
    policy = PolicyConfig(high_window=1, cooldown=2)
    report = run(spec, single_node_topology, _co_located(spec), SimConfig(ticks=8),
                 ElasticityController(spec, single_node_topology, policy))
    assert [a.render() for a in report.actions] == ["t=1 worker scale_out 2"]
    assert report.utilization("worker") == [Decimal(1), Decimal(1)] + [Decimal("0.75")] * 6


def test_full_host_migrates_to_next_cheapest_node():
    spec = chain_spec(rate="60", service_rate="40")
    topology = ResourceTopology(
        nodes=(make_node("n1", cpu="2"), make_node("n2", cpu="4", cost="0.2"), make_node("n3", cpu="4", cost="0.3")),
        links=(make_link("n1", "n2"), make_link("n1", "n3")),
    )
    policy = PolicyConfig(high_window=1)
    report = run(spec, topology, _co_located(spec), SimConfig(ticks=8), ElasticityController(spec, topology, policy))
    assert [a.render() for a in report.actions] == ["t=1 worker migrate n2"]
    worker = report.final_state.components["worker"]
    assert (worker.host, worker.replicas) == ("n2", 2)
    assert report.ticks[1].for_component("worker").host == "n2"


def test_migration_respects_latency_bounds():
    spec = PipelineSpec(
        name="bounded",
        components=(
            make_component("src", ComponentKind.INGESTION, rate=Decimal(60), service_rate=Decimal(100)),
            make_component("worker", service_rate=Decimal(40)),
        ),
        flows=(Flow(src="src", dst="worker", max_latency_ms=Decimal(15)),),
    )
    topology = ResourceTopology(
        nodes=(make_node("n1", cpu="2"), make_node("far", cpu="4", cost="0.05"), make_node("near", cpu="4", cost="0.3")),
        links=(make_link("n1", "far", "40"), make_link("n1", "near", "5")),
    )
    decided = decide(*_history(spec, topology, 1), spec, topology, PolicyConfig(high_window=1))
    assert [a.render() for a in decided] == ["t=1 worker migrate near"]


class ScriptedController:
    def __init__(self, script):
        self.script = script

    def decide(self, history, state, action_log):
        return list(self.script.get(state.tick, []))


def test_infeasible_actions_are_rejected(single_node_topology):
    spec = chain_spec(rate="60", service_rate="40")
    bus = EventBus()
    controller = ScriptedController({
        1: [Action(tick=1, component="worker", kind=ActionKind.SCALE_OUT, detail="50")],
        2: [Action(tick=2, component="worker", kind=ActionKind.SCALE_OUT, detail="2")],
    })
    report = run(spec, single_node_topology, _co_located(spec), SimConfig(ticks=5), controller, bus)
    assert [a.detail for a in report.rejected] == ["50"]
    assert [a.detail for a in report.actions] == ["2"]
    assert [e.tick for e in bus.get_event_history("controller.rejected")] == [1]
    assert [e.get("component") for e in bus.get_event_history("controller.action")] == ["worker"]
    assert report.ticks[1].for_component("worker").replicas == 1
    assert report.ticks[2].for_component("worker").replicas == 2


def test_no_decision_after_final_tick(single_node_topology):
    spec = chain_spec(rate="60", service_rate="40")
    seen = []

    class Recorder:
        def decide(self, history, state, action_log):
            seen.append(state.tick)
            return []

    run(spec, single_node_topology, _co_located(spec), SimConfig(ticks=4), Recorder())
    assert seen == [1, 2, 3]


@pytest.mark.parametrize("fields", [
    {"low_util": Decimal("0.8"), "high_util": Decimal("0.8")},
    {"high_window": 0},
    {"cooldown": -1},
    {"high_util": Decimal("1.5")},
    {"min_replicas": 0},
])
def test_invalid_policies(fields):
    with pytest.raises(ValidationError):
        PolicyConfig(**fields)


def test_policy_defaults():
    policy = PolicyConfig()
    assert (policy.high_util, policy.low_util) == (Decimal("0.8"), Decimal("0.3"))
    assert (policy.high_window, policy.low_window, policy.cooldown) == (3, 10, 5)
    assert policy.history_length == 10
