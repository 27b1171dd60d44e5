"""Canonical pretty-printer for pipeline specifications."""
from typing import List

from core.language.schemas.pipeline_spec import (
    Component,
    Flow,
    GpuDemand,
    PipelineSpec,
    TierHint,
)
from core.services.storage.json_codec import format_decimal
from core.settings import DEFAULT_GPU, DEFAULT_RATE, DEFAULT_REPLICAS, DEFAULT_SERVICE_RATE, DEFAULT_TIER_HINT

INDENT = "  "


def _component_lines(component: Component) -> List[str]:
    # Property order follows the Component field order; defaults are elided
    props = [
        ("kind", component.kind.value),
        ("cpu", format_decimal(component.cpu)),
        ("mem", str(component.mem)),
    ]
    if component.gpu != GpuDemand(DEFAULT_GPU):
        props.append(("gpu", component.gpu.value))
    if component.tier_hint != TierHint(DEFAULT_TIER_HINT):
        props.append(("tier_hint", component.tier_hint.value))
    if component.replicas != DEFAULT_REPLICAS:
        props.append(("replicas", str(component.replicas)))
    if component.rate != DEFAULT_RATE:
        props.append(("rate", format_decimal(component.rate)))
    if component.service_rate != DEFAULT_SERVICE_RATE:
        props.append(("service_rate", format_decimal(component.service_rate)))
    if component.model is not None:
        props.append(("model", str(component.model)))

    lines = [f"{INDENT}component {component.name} {{"]
    lines.extend(f"{INDENT * 2}{key}: {value}" for key, value in props)
    lines.append(f"{INDENT}}}")
    return lines


def _flow_lines(flow: Flow) -> List[str]:
    header = f"{INDENT}flow {flow.src} -> {flow.dst}"
    if flow.max_latency_ms is None:
        return [header]
    return [
        f"{header} {{",
        f"{INDENT * 2}max_latency_ms: {format_decimal(flow.max_latency_ms)}",
        f"{INDENT}}}",
    ]


def pretty_print(spec: PipelineSpec) -> str:
    """Render a spec canonically: components first, then flows, in source order."""
    lines = [f"pipeline {spec.name} {{"]
    for component in spec.components:
        lines.extend(_component_lines(component))
    for flow in spec.flows:
        lines.extend(_flow_lines(flow))
    lines.append("}")
    return "\n".join(lines) + "\n"
