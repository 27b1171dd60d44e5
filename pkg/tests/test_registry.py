from decimal import Decimal

import pytest

from core.language.schemas.pipeline_spec import ModelRef
from core.registry.schemas.model_record import Direction, EvalStrategy, ModelRecord, ModelStore
from core.registry.tools.model_registry import (
    ModelRegistry,
    load_store,
    register,
    resolve,
    select_best,
    serialize_store,
)
from core.services.error_handling import FormatError, RegistryError

ACCURACY = EvalStrategy.parse("maximize:accuracy")


def _record(version, accuracy, **fields):
    return ModelRecord(name="m", version=version, metrics={"accuracy": Decimal(accuracy)},
                       size_mb=Decimal(10), **fields)


def test_strategy_parsing():
    strategy = EvalStrategy.parse("minimize:latency_ms")
    assert strategy.direction == Direction.MINIMIZE
    assert strategy.metric == "latency_ms"
    assert str(strategy) == "minimize:latency_ms"
    for bad in ("accuracy", "maximise:accuracy", "maximize:", "maximize:9lives"):
        with pytest.raises(RegistryError):
            EvalStrategy.parse(bad)


def test_register_assigns_sequence_and_rejects_duplicates():
    store = register(ModelStore(), _record("1", "0.8", created_seq=42))
    store = register(store, _record("2", "0.9"))
    assert [r.created_seq for r in store.models] == [0, 1]
    with pytest.raises(RegistryError, match="already registered"):
        register(store, _record("1", "0.7"))
    with pytest.raises(RegistryError, match="reserved"):
        register(store, _record("latest", "0.7"))


def test_select_best_and_ties():
    store = register(register(ModelStore(), _record("1", "0.8")), _record("2", "0.9"))
    assert select_best(store, "m", ACCURACY).version == "2"
    assert select_best(store, "m", EvalStrategy.parse("minimize:accuracy")).version == "1"

    tied = register(register(ModelStore(), _record("a", "0.9")), _record("b", "0.9"))
    assert select_best(tied, "m", ACCURACY).version == "a"


def test_select_errors(store):
    with pytest.raises(RegistryError, match="no model named"):
        select_best(store, "ghost", ACCURACY)
    with pytest.raises(RegistryError, match="metric 'f1'"):
        select_best(store, "traffic_net", EvalStrategy.parse("maximize:f1"))


def test_resolve(store):
    assert resolve(store, ModelRef(name="traffic_net", version="latest"), ACCURACY).ref == "traffic_net@v2"
    assert resolve(store, ModelRef(name="traffic_net", version="v1"), ACCURACY).ref == "traffic_net@v1"
    with pytest.raises(RegistryError, match="unknown version"):
        resolve(store, ModelRef(name="traffic_net", version="v3"), ACCURACY)


def test_store_round_trip(store):
    assert load_store(serialize_store(store)) == store


def test_duplicate_records_in_file():
    text = '{"models": [' + ",".join(
        f'{{"name": "m", "version": "1", "size_mb": 1, "created_seq": {seq}}}' for seq in (0, 1)
    ) + "]}"
    with pytest.raises(FormatError) as info:
        load_store(text)
    assert info.value.location == "$.models[1]"


@pytest.mark.asyncio
async def test_file_backed_registry(tmp_path):
    registry = ModelRegistry(str(tmp_path / "registry.json"))
    assert (await registry.load(missing_ok=True)).models == ()

    first = await registry.add(_record("1", "0.8"))
    second = await registry.add(_record("2", "0.9", gpu_required=True))
    assert (first.created_seq, second.created_seq) == (0, 1)

    reloaded = await registry.load()
    assert [r.ref for r in reloaded.models] == ["m@1", "m@2"]
    assert reloaded.find("m", "2").gpu_required
    assert not list(tmp_path.glob(".*.tmp"))
