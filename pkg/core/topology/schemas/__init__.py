from .resource_topology import Tier, NodeDesc, LinkDesc, ResourceTopology, LatencyTable

__all__ = ['Tier', 'NodeDesc', 'LinkDesc', 'ResourceTopology', 'LatencyTable']
