"""Shared fixtures: the smart-traffic scenario and small builders for random instances."""
from decimal import Decimal
from pathlib import Path

import pytest

from core.language.schemas.pipeline_spec import Component, ComponentKind, Flow, PipelineSpec
from core.language.tools.parser import parse_spec
from core.placement.tools.plan_io import load_plan
from core.registry.tools.model_registry import load_store
from core.topology.schemas.resource_topology import LinkDesc, NodeDesc, ResourceTopology, Tier
from core.topology.tools.topology_loader import load_topology

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def make_component(name: str, kind: ComponentKind = ComponentKind.STREAM, cpu="1", mem: int = 128, **fields) -> Component:
    return Component(name=name, kind=kind, cpu=Decimal(cpu), mem=mem, **fields)


def make_node(node_id: str, tier: Tier = Tier.EDGE, cpu="4", mem: int = 4096, gpus: int = 0, cost="0.1") -> NodeDesc:
    return NodeDesc(id=node_id, tier=tier, cpu_cores=Decimal(cpu), mem_mb=mem, gpus=gpus,
                    cost_per_core_hour=Decimal(cost))


def make_link(a: str, b: str, latency="10") -> LinkDesc:
    return LinkDesc(a=a, b=b, latency_ms=Decimal(latency), bandwidth_mbps=Decimal(100))


def chain_spec(rate="5", service_rate="10") -> PipelineSpec:
    """src (ingestion) -> worker (stream), both on one node."""
    return PipelineSpec(
        name="chain",
        components=(
            make_component("src", ComponentKind.INGESTION, rate=Decimal(rate), service_rate=Decimal(100)),
            make_component("worker", service_rate=Decimal(service_rate)),
        ),
        flows=(Flow(src="src", dst="worker"),),
    )


@pytest.fixture
def smart_spec() -> PipelineSpec:
    return parse_spec(fixture_text("smart_traffic.stratum"))


@pytest.fixture
def topology() -> ResourceTopology:
    return load_topology(fixture_text("topology.json"))


@pytest.fixture
def relief_topology() -> ResourceTopology:
    return load_topology(fixture_text("topology_relief.json"))


@pytest.fixture
def smart_plan():
    return load_plan(fixture_text("smart_traffic.plan.json"))


@pytest.fixture
def store():
    return load_store(fixture_text("registry.json"))


@pytest.fixture
def single_node_topology() -> ResourceTopology:
    return ResourceTopology(nodes=(make_node("n1", cpu="8", mem=8192),))
