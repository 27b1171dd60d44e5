"""Cloud-fog-edge resource topology."""
from .schemas import ResourceTopology, NodeDesc, LinkDesc, Tier
from .tools import load_topology, read_topology, serialize_topology

__all__ = [
    'ResourceTopology',
    'NodeDesc',
    'LinkDesc',
    'Tier',
    'load_topology',
    'read_topology',
    'serialize_topology',
]
