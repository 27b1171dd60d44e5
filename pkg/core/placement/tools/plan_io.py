"""Plan (de)serialization: JSON with lexicographically sorted keys."""
from typing import Optional

from pydantic import ValidationError

from core.language.schemas.pipeline_spec import PipelineSpec
from core.services.error_handling import FormatError
from core.services.storage import json_codec, read_text
from core.services.storage.json_codec import format_decimal
from core.topology.schemas.resource_topology import ResourceTopology
from ..schemas.placement_plan import PlacementPlan
from .feasibility_checker import PlacementProblem

PLAN_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["mode", "cost_per_hour", "assignments", "replicas"],
    "properties": {
        "mode": {"enum": ["exact", "heuristic"]},
        "cost_per_hour": {"type": "number", "minimum": 0},
        "assignments": {"type": "object", "additionalProperties": {"type": "string"}},
        "replicas": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1}},
    },
}


def serialize_plan(plan: PlacementPlan) -> str:
    return json_codec.dumps(plan.to_document())


def load_plan(source: str, origin: Optional[str] = None) -> PlacementPlan:
    document = json_codec.loads(source, origin)
    json_codec.check_schema(document, PLAN_SCHEMA, origin)
    missing = sorted(set(document["assignments"]) ^ set(document["replicas"]))
    if missing:
        raise FormatError("$.replicas", f"assignments and replicas disagree on: {', '.join(missing)}", origin)
    try:
        return PlacementPlan(**document)
    except ValidationError as e:
        first = e.errors()[0]
        raise FormatError(json_codec.json_path(first["loc"]), first["msg"], origin)


def check_plan_matches(spec: PipelineSpec, topology: ResourceTopology, plan: PlacementPlan,
                       origin: Optional[str] = None) -> None:
    """Replica counts must mirror the pipeline and the recorded cost must match the assignment.

    Expects a plan whose names check_feasible has already accepted.

    Raises:
        FormatError: at the first field that disagrees.
    """
    for component in spec.components:
        recorded = plan.replicas[component.name]
        if recorded != component.replicas:
            raise FormatError(f"$.replicas.{component.name}",
                              f"{recorded} replica(s) but the pipeline declares {component.replicas}", origin)
    expected = PlacementProblem(spec, topology).plan_cost(plan.assignments, plan.replicas)
    if plan.cost_per_hour != expected:
        raise FormatError("$.cost_per_hour", f"recorded {format_decimal(plan.cost_per_hour)} "
                          f"but the assignment costs {format_decimal(expected)}", origin)


async def read_plan(path: str) -> PlacementPlan:
    return load_plan(await read_text(path), origin=path)
