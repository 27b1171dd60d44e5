"""Loads and serializes topology files."""
from typing import Optional

from pydantic import ValidationError

from core.services.error_handling import FormatError
from core.services.logging import setup_logger
from core.services.storage import json_codec, read_text
from ..schemas.resource_topology import LinkDesc, NodeDesc, ResourceTopology

logger = setup_logger(__name__)

IDENTIFIER_PATTERN = "^[A-Za-z_][A-Za-z0-9_]*$"

TOPOLOGY_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["nodes"],
    "properties": {
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "tier", "cpu_cores", "mem_mb", "gpus", "cost_per_core_hour"],
                "properties": {
                    "id": {"type": "string", "pattern": IDENTIFIER_PATTERN},
                    "tier": {"enum": ["edge", "fog", "cloud"]},
                    "cpu_cores": {"type": "number", "exclusiveMinimum": 0},
                    "mem_mb": {"type": "integer", "exclusiveMinimum": 0},
                    "gpus": {"type": "integer", "minimum": 0},
                    "cost_per_core_hour": {"type": "number", "minimum": 0},
                },
            },
        },
        "links": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["a", "b", "latency_ms", "bandwidth_mbps"],
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "latency_ms": {"type": "number", "minimum": 0},
                    "bandwidth_mbps": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
    },
}


def load_topology(source: str, origin: Optional[str] = None) -> ResourceTopology:
    """Parse topology JSON text, enforcing every topology rule.

    Raises:
        FormatError: with a JSON path locating the first problem.
    """
    document = json_codec.loads(source, origin)
    json_codec.check_schema(document, TOPOLOGY_SCHEMA, origin)

    seen_nodes = set()
    for i, node in enumerate(document["nodes"]):
        if node["id"] in seen_nodes:
            raise FormatError(f"$.nodes[{i}].id", f"duplicate node id '{node['id']}'", origin)
        seen_nodes.add(node["id"])

    seen_pairs = set()
    for j, link in enumerate(document.get("links", [])):
        for end in ("a", "b"):
            if link[end] not in seen_nodes:
                raise FormatError(f"$.links[{j}].{end}", f"unknown node '{link[end]}'", origin)
        if link["a"] == link["b"]:
            raise FormatError(f"$.links[{j}]", f"self-link on node '{link['a']}'", origin)
        pair = frozenset((link["a"], link["b"]))
        if pair in seen_pairs:
            raise FormatError(f"$.links[{j}]", f"duplicate link between '{link['a']}' and '{link['b']}'", origin)
        seen_pairs.add(pair)

    try:
        topology = ResourceTopology(
            nodes=tuple(NodeDesc(**n) for n in document["nodes"]),
            links=tuple(LinkDesc(**l) for l in document.get("links", [])),
        )
    except ValidationError as e:
        first = e.errors()[0]
        raise FormatError(json_codec.json_path(first["loc"]), first["msg"], origin)

    logger.debug(f"Loaded topology with {len(topology.nodes)} nodes and {len(topology.links)} links")
    return topology


async def read_topology(path: str) -> ResourceTopology:
    """Read and load a topology file."""
    return load_topology(await read_text(path), origin=path)


def serialize_topology(topology: ResourceTopology) -> str:
    """Canonical JSON form: file order kept, keys sorted."""
    return json_codec.dumps({
        "nodes": [n.model_dump(mode="python") for n in topology.nodes],
        "links": [l.model_dump(mode="python") for l in topology.links],
    })
