import random
from decimal import Decimal

from core.language.schemas.pipeline_spec import ComponentKind, Flow, ModelRef, PipelineSpec
from core.validation.schemas.validation_report import ValidationCode
from core.validation.tools.constraint_checker import topological_order, validate
from tests.conftest import make_component


def _spec(components, flows=()):
    return PipelineSpec(name="p", components=tuple(components), flows=tuple(flows))


def test_smart_traffic_is_valid(smart_spec):
    report = validate(smart_spec)
    assert report.ok
    assert report.errors == ()


def test_two_cycle():
    spec = _spec(
        [make_component("src", ComponentKind.INGESTION), make_component("a"), make_component("b")],
        [Flow(src="src", dst="a"), Flow(src="a", dst="b"), Flow(src="b", dst="a")],
    )
    report = validate(spec)
    assert report.codes() == (ValidationCode.E_CYCLE,)
    assert report.errors[0].subject == "a"


def test_dangling_endpoint():
    spec = _spec([make_component("a", ComponentKind.INGESTION)], [Flow(src="a", dst="ghost")])
    report = validate(spec)
    assert report.codes() == (ValidationCode.E_UNKNOWN_COMPONENT,)
    assert report.errors[0].subject == "ghost"
    assert report.errors[0].render().startswith("E_UNKNOWN_COMPONENT ghost: ")


def test_empty_pipeline():
    report = validate(_spec([]))
    assert report.codes() == (ValidationCode.E_EMPTY,)
    assert report.errors[0].subject == "p"


def test_component_rules_in_source_order():
    spec = _spec([
        make_component("a", ComponentKind.INGESTION),
        make_component("a", ComponentKind.INGESTION),
        make_component("bad", ComponentKind.INGESTION, cpu="0", replicas=0),
        make_component("m", ComponentKind.INFERENCE),
        make_component("s", ComponentKind.STREAM, model=ModelRef(name="x", version="1")),
    ], [Flow(src="a", dst="m"), Flow(src="a", dst="s")])
    report = validate(spec)
    assert [(e.code, e.subject) for e in report.errors] == [
        (ValidationCode.E_DUPLICATE, "a"),
        (ValidationCode.E_RANGE, "bad"),
        (ValidationCode.E_RANGE, "bad"),
        (ValidationCode.E_MISSING_MODEL, "m"),
        (ValidationCode.E_UNEXPECTED_MODEL, "s"),
    ]


def test_self_loop_and_unreachable():
    spec = _spec(
        [make_component("src", ComponentKind.INGESTION), make_component("lonely"), make_component("loop")],
        [Flow(src="src", dst="loop"), Flow(src="loop", dst="loop")],
    )
    report = validate(spec)
    assert [(e.code, e.subject) for e in report.errors] == [
        (ValidationCode.E_UNREACHABLE, "lonely"),
        (ValidationCode.E_SELF_LOOP, "loop"),
    ]


def test_batch_with_incoming_flow_counts_as_anchored():
    spec = _spec(
        [make_component("src", ComponentKind.INGESTION),
         make_component("job", ComponentKind.BATCH), make_component("view", ComponentKind.VISUALIZATION)],
        [Flow(src="job", dst="view")],
    )
    report = validate(spec)
    assert report.codes() == (ValidationCode.E_UNREACHABLE,)
    assert report.errors[0].subject == "job"


def test_topological_order_breaks_ties_by_source_order(smart_spec):
    assert topological_order(smart_spec) == [
        "camera_ingest", "recognizer", "signal_controller", "trainer", "dashboard",
    ]


def _random_dag(rng: random.Random) -> PipelineSpec:
    count = rng.randint(2, 8)
    components = [make_component("c0", ComponentKind.INGESTION)]
    components += [make_component(f"c{i}") for i in range(1, count)]
    flows = []
    for i in range(1, count):
        # every component gets one upstream edge from an earlier one
        flows.append(Flow(src=f"c{rng.randrange(i)}", dst=f"c{i}"))
    for _ in range(rng.randint(0, 3)):
        a, b = sorted(rng.sample(range(count), 2))
        flows.append(Flow(src=f"c{a}", dst=f"c{b}"))
    rng.shuffle(flows)
    return _spec(components, flows)


def test_random_dags_and_mutants():
    rng = random.Random(7)
    for _ in range(250):
        spec = _random_dag(rng)
        assert validate(spec).ok

        # back-edge from a descendant to its ancestor
        edge = rng.choice(spec.flows)
        cyclic = spec.model_copy(update={"flows": spec.flows + (Flow(src=edge.dst, dst=edge.src),)})
        assert ValidationCode.E_CYCLE in validate(cyclic).codes()

        dangling = spec.model_copy(update={"flows": spec.flows + (Flow(src=edge.src, dst="ghost"),)})
        report = validate(dangling)
        assert ValidationCode.E_UNKNOWN_COMPONENT in report.codes()

        # flow order never changes the verdict
        shuffled = list(spec.flows)
        rng.shuffle(shuffled)
        assert validate(spec.model_copy(update={"flows": tuple(shuffled)})).ok


def test_flow_bound_range_checked_for_programmatic_specs():
    spec = _spec(
        [make_component("a", ComponentKind.INGESTION), make_component("b")],
        [Flow(src="a", dst="b", max_latency_ms=Decimal(0))],
    )
    assert validate(spec).codes() == (ValidationCode.E_RANGE,)
