"""Turns a validated spec and a feasible plan into per-node manifests."""
from typing import Dict, List, Optional, Tuple

from core.language.schemas.pipeline_spec import Component, PipelineSpec
from core.placement.schemas.placement_plan import PlacementPlan
from core.placement.tools.feasibility_checker import check_feasible
from core.registry.schemas.model_record import EvalStrategy, ModelStore
from core.registry.tools.model_registry import resolve
from core.services.error_handling import CodegenError, RegistryError
from core.services.logging import setup_logger
from core.topology.schemas.resource_topology import ResourceTopology
from ..schemas.deployment_manifest import DeploymentManifest, DeploymentUnit, ManifestIndex, WiringEntry

logger = setup_logger(__name__)


class ManifestGenerator:
    """Pins models and groups components by host."""

    def __init__(self, spec: PipelineSpec, topology: ResourceTopology, plan: PlacementPlan,
                 store: ModelStore, strategy: EvalStrategy):
        self.spec = spec
        self.topology = topology
        self.plan = plan
        self.store = store
        self.strategy = strategy

    def _refuse_infeasible(self) -> None:
        verdict = check_feasible(self.spec, self.topology, self.plan)
        if not verdict.feasible:
            summary = ", ".join(f"{v.rule.value} {v.subject}" for v in verdict.violations)
            raise CodegenError(f"refusing to generate manifests for an infeasible plan: {summary}")

    def _pin_model(self, component: Component) -> Optional[str]:
        if component.model is None:
            return None
        try:
            record = resolve(self.store, component.model, self.strategy)
        except RegistryError as e:
            raise CodegenError(f"cannot resolve model {component.model} for '{component.name}': {e}")
        if record.gpu_required and not component.needs_gpu:
            raise CodegenError(
                f"model {record.ref} requires a GPU but component '{component.name}' declares gpu: none"
            )
        if component.model.is_latest:
            logger.info(f"Pinned {component.model} to {record.ref} for '{component.name}'")
        return record.ref

    def _unit(self, component: Component) -> DeploymentUnit:
        return DeploymentUnit(
            component=component.name,
            kind=component.kind,
            replicas=self.plan.replicas[component.name],
            cpu=component.cpu,
            mem=component.mem,
            gpu=component.needs_gpu,
            model=self._pin_model(component),
        )

    def _wiring(self, node_id: str) -> Tuple[WiringEntry, ...]:
        hosts = self.plan.assignments
        latency = self.topology.latency_table()
        touching = sorted(
            (f for f in self.spec.flows if node_id in (hosts[f.src], hosts[f.dst])),
            key=lambda f: (f.src, f.dst),
        )
        return tuple(
            WiringEntry(
                src=f"{f.src}@{hosts[f.src]}",
                dst=f"{f.dst}@{hosts[f.dst]}",
                latency_ms=latency.get((hosts[f.src], hosts[f.dst])),
            )
            for f in touching
        )

    def generate(self) -> List[DeploymentManifest]:
        self._refuse_infeasible()

        units_by_node: Dict[str, List[DeploymentUnit]] = {}
        for component in self.spec.components:
            unit = self._unit(component)
            units_by_node.setdefault(self.plan.assignments[component.name], []).append(unit)

        manifests = []
        for node_id in sorted(units_by_node):
            node = self.topology.node(node_id)
            manifests.append(DeploymentManifest(
                node_id=node_id,
                tier=node.tier.value,
                units=tuple(sorted(units_by_node[node_id], key=lambda u: u.component)),
                wiring=self._wiring(node_id),
            ))
        logger.info(f"Generated {len(manifests)} manifests for pipeline '{self.spec.name}'")
        return manifests


def generate(spec: PipelineSpec, topology: ResourceTopology, plan: PlacementPlan,
             store: ModelStore, strategy: EvalStrategy) -> List[DeploymentManifest]:
    """One manifest per hosting node, ordered by node id.

    Raises:
        CodegenError: if the plan is infeasible, a model cannot be resolved, or a
            GPU-only model is pinned onto a component without a GPU.
    """
    return ManifestGenerator(spec, topology, plan, store, strategy).generate()


def build_index(spec: PipelineSpec, plan: PlacementPlan, manifests: List[DeploymentManifest]) -> ManifestIndex:
    return ManifestIndex(
        pipeline=spec.name,
        mode=plan.mode.value,
        cost_per_hour=plan.cost_per_hour,
        manifests=tuple(sorted(m.file_name for m in manifests)),
    )
