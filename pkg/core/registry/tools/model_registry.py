"""File-backed model registry: registration, best-model selection and ref resolution."""
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from core.language.schemas.pipeline_spec import LATEST, ModelRef
from core.services.error_handling import FormatError, RegistryError
from core.services.logging import setup_logger
from core.services.storage import json_codec, read_text, write_text_atomic
from ..schemas.model_record import Direction, EvalStrategy, ModelRecord, ModelStore

logger = setup_logger(__name__)

REGISTRY_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["models"],
    "properties": {
        "models": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "version", "size_mb", "created_seq"],
                "properties": {
                    "name": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z0-9_]*$"},
                    "version": {"type": "string", "pattern": "^[A-Za-z0-9_][A-Za-z0-9_.]*$"},
                    "metrics": {"type": "object", "additionalProperties": {"type": "number"}},
                    "size_mb": {"type": "number", "exclusiveMinimum": 0},
                    "gpu_required": {"type": "boolean"},
                    "created_seq": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}


def register(store: ModelStore, record: ModelRecord) -> ModelStore:
    """Add a record, assigning the next registration counter.

    The incoming ``created_seq`` is ignored.
    """
    if record.version == LATEST:
        raise RegistryError(f"'{LATEST}' is reserved and cannot be registered as a version")
    if store.find(record.name, record.version) is not None:
        raise RegistryError(f"model {record.ref} is already registered")
    next_seq = max((r.created_seq for r in store.models), default=-1) + 1
    stored = record.model_copy(update={"created_seq": next_seq})
    logger.info(f"Registered model {stored.ref} (seq {next_seq})")
    return ModelStore(models=store.models + (stored,))


def select_best(store: ModelStore, name: str, strategy: EvalStrategy) -> ModelRecord:
    """Best version of a model under the strategy; ties go to the oldest registration."""
    candidates = store.versions(name)
    if not candidates:
        raise RegistryError(f"no model named '{name}' in registry")
    scored = [r for r in candidates if strategy.metric in r.metrics]
    if not scored:
        raise RegistryError(f"metric '{strategy.metric}' is not recorded for any version of '{name}'")

    sign = -1 if strategy.direction == Direction.MAXIMIZE else 1
    return min(scored, key=lambda r: (sign * r.metrics[strategy.metric], r.created_seq))


def resolve(store: ModelStore, ref: ModelRef, strategy: EvalStrategy) -> ModelRecord:
    """Pin a ModelRef to a concrete record; ``latest`` goes through select_best."""
    if ref.is_latest:
        return select_best(store, ref.name, strategy)
    if not store.versions(ref.name):
        raise RegistryError(f"no model named '{ref.name}' in registry")
    record = store.find(ref.name, ref.version)
    if record is None:
        raise RegistryError(f"unknown version '{ref.version}' of model '{ref.name}'")
    return record


def load_store(source: str, origin: Optional[str] = None) -> ModelStore:
    """Parse registry JSON text."""
    document = json_codec.loads(source, origin)
    json_codec.check_schema(document, REGISTRY_SCHEMA, origin)

    seen_refs = set()
    seen_seqs = set()
    for i, entry in enumerate(document["models"]):
        ref = (entry["name"], entry["version"])
        if ref in seen_refs:
            raise FormatError(f"$.models[{i}]", f"duplicate model {entry['name']}@{entry['version']}", origin)
        if entry["created_seq"] in seen_seqs:
            raise FormatError(f"$.models[{i}].created_seq", f"duplicate created_seq {entry['created_seq']}", origin)
        seen_refs.add(ref)
        seen_seqs.add(entry["created_seq"])

    try:
        return ModelStore(models=tuple(ModelRecord(**entry) for entry in document["models"]))
    except ValidationError as e:
        first = e.errors()[0]
        raise FormatError(json_codec.json_path(first["loc"]), first["msg"], origin)


def serialize_store(store: ModelStore) -> str:
    return json_codec.dumps({"models": [r.model_dump(mode="python") for r in store.models]})


class ModelRegistry:
    """Registry persisted as a single JSON file, rewritten atomically."""

    def __init__(self, path: str):
        self.path = Path(path)

    async def load(self, missing_ok: bool = False) -> ModelStore:
        """Load the store; a missing file yields an empty store when allowed."""
        if missing_ok and not self.path.exists():
            logger.info(f"Registry {self.path} does not exist yet, starting empty")
            return ModelStore()
        return load_store(await read_text(self.path), origin=str(self.path))

    async def save(self, store: ModelStore) -> None:
        await write_text_atomic(self.path, serialize_store(store))

    async def add(self, record: ModelRecord) -> ModelRecord:
        """Register and persist one record; returns it with its assigned counter."""
        store = register(await self.load(missing_ok=True), record)
        await self.save(store)
        return store.models[-1]
