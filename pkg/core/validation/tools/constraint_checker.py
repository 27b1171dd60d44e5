"""Correct-by-construction checks run before planning or code generation."""
from decimal import Decimal
from typing import Dict, List, Tuple

import networkx as nx

from core.language.schemas.pipeline_spec import ComponentKind, PipelineSpec
from core.services.logging import setup_logger
from ..schemas.validation_report import ValidationCode, ValidationIssue, ValidationReport

logger = setup_logger(__name__)

COMPONENT_SECTION = 0
FLOW_SECTION = 1

# Kinds that may legitimately start from their own incoming flow
SELF_ANCHORED_KINDS = (ComponentKind.BATCH, ComponentKind.VISUALIZATION)


def flow_graph(spec: PipelineSpec) -> nx.DiGraph:
    """Directed graph over unique component names with every well-formed flow.

    Flows with unknown endpoints and self-loops are left out.
    """
    graph = nx.DiGraph()
    for name in spec.source_index():
        graph.add_node(name)
    for flow in spec.flows:
        if flow.src != flow.dst and flow.src in graph and flow.dst in graph:
            graph.add_edge(flow.src, flow.dst)
    return graph


def topological_order(spec: PipelineSpec) -> List[str]:
    """Topological order of components, ties broken by source order."""
    index = spec.source_index()
    return list(nx.lexicographical_topological_sort(flow_graph(spec), key=index.__getitem__))


class ConstraintChecker:
    """Collects every rule violation instead of stopping at the first."""

    def __init__(self, spec: PipelineSpec):
        self.spec = spec
        self.index = spec.source_index()
        self._found: List[Tuple[Tuple[int, int, int], ValidationIssue]] = []

    def _add(self, section: int, position: int, code: ValidationCode, subject: str, message: str) -> None:
        rank = list(ValidationCode).index(code)
        self._found.append(((section, position, rank), ValidationIssue(code=code, subject=subject, message=message)))

    def check(self) -> ValidationReport:
        if not self.spec.components:
            self._add(COMPONENT_SECTION, -1, ValidationCode.E_EMPTY, self.spec.name,
                      "pipeline declares no components")
        self._check_components()
        self._check_flows()

        graph = flow_graph(self.spec)
        self._check_cycles(graph)
        self._check_reachability(graph)

        ordered = [issue for _, issue in sorted(self._found, key=lambda item: item[0])]
        report = ValidationReport(errors=tuple(ordered))
        logger.debug(f"Validated pipeline {self.spec.name}: {len(ordered)} error(s)")
        return report

    def _check_components(self) -> None:
        seen = set()
        for i, c in enumerate(self.spec.components):
            if c.name in seen:
                self._add(COMPONENT_SECTION, i, ValidationCode.E_DUPLICATE, c.name,
                          f"component '{c.name}' is declared more than once")
            seen.add(c.name)

            for field, value, valid, bound in (
                ("cpu", c.cpu, c.cpu > 0, "> 0"),
                ("mem", c.mem, c.mem > 0, "> 0"),
                ("replicas", c.replicas, c.replicas >= 1, ">= 1"),
                ("rate", c.rate, c.rate >= 0, ">= 0"),
                ("service_rate", c.service_rate, c.service_rate > 0, "> 0"),
            ):
                if not valid:
                    self._add(COMPONENT_SECTION, i, ValidationCode.E_RANGE, c.name,
                              f"{field}={value} must be {bound}")

            if c.kind == ComponentKind.INFERENCE and c.model is None:
                self._add(COMPONENT_SECTION, i, ValidationCode.E_MISSING_MODEL, c.name,
                          "inference component has no model reference")
            if c.kind != ComponentKind.INFERENCE and c.model is not None:
                self._add(COMPONENT_SECTION, i, ValidationCode.E_UNEXPECTED_MODEL, c.name,
                          f"{c.kind.value} component must not reference a model")

    def _check_flows(self) -> None:
        for j, flow in enumerate(self.spec.flows):
            if flow.src == flow.dst:
                self._add(FLOW_SECTION, j, ValidationCode.E_SELF_LOOP, flow.src,
                          f"flow {flow.src} -> {flow.dst} loops onto itself")
            for endpoint in dict.fromkeys((flow.src, flow.dst)):
                if endpoint not in self.index:
                    self._add(FLOW_SECTION, j, ValidationCode.E_UNKNOWN_COMPONENT, endpoint,
                              f"flow {flow.src} -> {flow.dst} references unknown component '{endpoint}'")
            if flow.max_latency_ms is not None and flow.max_latency_ms <= Decimal(0):
                self._add(FLOW_SECTION, j, ValidationCode.E_RANGE, flow.src,
                          f"flow {flow.src} -> {flow.dst} max_latency_ms={flow.max_latency_ms} must be > 0")

    def _check_cycles(self, graph: nx.DiGraph) -> None:
        for scc in nx.strongly_connected_components(graph):
            if len(scc) < 2:
                continue
            subject = min(scc, key=self.index.__getitem__)
            members = sorted(scc, key=self.index.__getitem__)
            self._add(COMPONENT_SECTION, self.index[subject], ValidationCode.E_CYCLE, subject,
                      f"flows form a cycle through {', '.join(members)}")

    def _check_reachability(self, graph: nx.DiGraph) -> None:
        kinds: Dict[str, ComponentKind] = {}
        for c in self.spec.components:
            kinds.setdefault(c.name, c.kind)

        reachable = set()
        for name, kind in kinds.items():
            if kind == ComponentKind.INGESTION:
                reachable.add(name)
                reachable.update(nx.descendants(graph, name))

        for name, kind in kinds.items():
            if kind == ComponentKind.INGESTION or name in reachable:
                continue
            if kind in SELF_ANCHORED_KINDS and graph.in_degree(name) > 0:
                continue
            self._add(COMPONENT_SECTION, self.index[name], ValidationCode.E_UNREACHABLE, name,
                      "not reachable from any ingestion component")


def validate(spec: PipelineSpec) -> ValidationReport:
    """Run every constraint over a parsed spec."""
    return ConstraintChecker(spec).check()
