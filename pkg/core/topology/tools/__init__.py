from .topology_loader import load_topology, read_topology, serialize_topology

__all__ = ['load_topology', 'read_topology', 'serialize_topology']
