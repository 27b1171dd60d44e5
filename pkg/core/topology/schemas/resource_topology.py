"""Schema for the cloud-fog-edge resource topology."""
from decimal import Decimal
from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.services.error_handling import TopologyError


class Tier(str, Enum):
    EDGE = "edge"
    FOG = "fog"
    CLOUD = "cloud"


class NodeDesc(BaseModel):
    """A bare-metal or virtual host in one tier."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(..., description="Unique node identifier")
    tier: Tier = Field(..., description="Infrastructure tier")
    cpu_cores: Decimal = Field(..., gt=0, description="CPU capacity in cores")
    mem_mb: int = Field(..., gt=0, description="Memory capacity in MB")
    gpus: int = Field(..., ge=0, description="GPU units")
    cost_per_core_hour: Decimal = Field(..., ge=0, description="Price per core-hour")


class LinkDesc(BaseModel):
    """Undirected single-hop network link."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    a: str = Field(..., description="First endpoint node id")
    b: str = Field(..., description="Second endpoint node id")
    latency_ms: Decimal = Field(..., ge=0, description="One-way latency in ms")
    bandwidth_mbps: Decimal = Field(..., gt=0, description="Bandwidth in Mbit/s (reported, not constrained)")


LatencyTable = Dict[Tuple[str, str], Decimal]


class ResourceTopology(BaseModel):
    """Nodes and links; latency is single-hop and symmetric."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    nodes: Tuple[NodeDesc, ...] = Field(default_factory=tuple, description="Nodes in file order")
    links: Tuple[LinkDesc, ...] = Field(default_factory=tuple, description="Links in file order")

    def node(self, node_id: str) -> NodeDesc:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise TopologyError(f"unknown node '{node_id}'")

    def node_ids(self) -> Tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    def latency_table(self) -> LatencyTable:
        """Both orientations of every link plus the zero diagonal."""
        table: LatencyTable = {(n.id, n.id): Decimal(0) for n in self.nodes}
        for link in self.links:
            table[(link.a, link.b)] = link.latency_ms
            table[(link.b, link.a)] = link.latency_ms
        return table

    def latency(self, x: str, y: str) -> Optional[Decimal]:
        """Latency between two nodes in ms, or None when they are not linked."""
        self.node(x)
        self.node(y)
        return self.latency_table().get((x, y))
