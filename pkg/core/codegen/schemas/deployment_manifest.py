"""Schema for per-node deployment manifests."""
from decimal import Decimal
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.language.schemas.pipeline_spec import ComponentKind
from core.settings import MANIFEST_SUFFIX


class DeploymentUnit(BaseModel):
    """One component as deployed on its host."""
    model_config = ConfigDict(frozen=True)

    component: str = Field(..., description="Component name")
    kind: ComponentKind = Field(..., description="Component kind")
    replicas: int = Field(..., ge=1, description="Replica count")
    cpu: Decimal = Field(..., description="CPU cores per replica")
    mem: int = Field(..., description="Memory per replica in MB")
    gpu: bool = Field(False, description="Whether each replica holds a GPU")
    model: Optional[str] = Field(None, description="Pinned model as name@version")

    def to_document(self) -> dict:
        return {
            "component": self.component,
            "kind": self.kind.value,
            "replicas": self.replicas,
            "cpu": self.cpu,
            "mem": self.mem,
            "gpu": self.gpu,
            "model": self.model,
        }


class WiringEntry(BaseModel):
    """A flow touching the node, with both endpoints qualified by host."""
    model_config = ConfigDict(frozen=True)

    src: str = Field(..., description="Upstream endpoint as component@node")
    dst: str = Field(..., description="Downstream endpoint as component@node")
    latency_ms: Optional[Decimal] = Field(..., description="Link latency between the hosts, None when unlinked")

    def to_document(self) -> dict:
        return {"src": self.src, "dst": self.dst, "latency_ms": self.latency_ms}


class DeploymentManifest(BaseModel):
    """Everything one node runs: units sorted by name, wiring sorted by (src, dst)."""
    model_config = ConfigDict(frozen=True)

    node_id: str = Field(..., description="Hosting node")
    tier: str = Field(..., description="Tier of the hosting node")
    units: Tuple[DeploymentUnit, ...] = Field(default_factory=tuple, description="Deployed components")
    wiring: Tuple[WiringEntry, ...] = Field(default_factory=tuple, description="Flows with an endpoint here")

    @property
    def file_name(self) -> str:
        return f"{self.node_id}{MANIFEST_SUFFIX}"

    def to_document(self) -> dict:
        return {
            "node": self.node_id,
            "tier": self.tier,
            "units": [u.to_document() for u in self.units],
            "wiring": [w.to_document() for w in self.wiring],
        }


class ManifestIndex(BaseModel):
    """Contents of index.yaml."""
    model_config = ConfigDict(frozen=True)

    pipeline: str = Field(..., description="Pipeline name")
    mode: str = Field(..., description="Solver that produced the plan")
    cost_per_hour: Decimal = Field(..., description="Plan cost")
    manifests: Tuple[str, ...] = Field(default_factory=tuple, description="Manifest file names, sorted")

    def to_document(self) -> dict:
        return {
            "pipeline": self.pipeline,
            "plan": {"mode": self.mode, "cost_per_hour": self.cost_per_hour},
            "manifests": list(self.manifests),
        }
