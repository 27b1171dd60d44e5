import json

import pytest

from core.cli.command_line import build_parser, main
from core.engine.deployment_engine import DeploymentEngine
from tests.conftest import FIXTURES, fixture_path, fixture_text

SPEC = fixture_path("smart_traffic.stratum")
TOPOLOGY = fixture_path("topology.json")
PLAN = fixture_path("smart_traffic.plan.json")
REGISTRY = fixture_path("registry.json")


def _write(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content, encoding="utf-8")
    return str(path)


@pytest.mark.asyncio
async def test_validate_ok(capsys):
    assert await main(["validate", SPEC]) == 0
    out, err = capsys.readouterr()
    assert out == ""


@pytest.mark.asyncio
async def test_validate_reports_cycles(tmp_path, capsys):
    spec = _write(tmp_path, "cyclic.stratum", (
        "pipeline loop {\n"
        "  component cam { kind: ingestion cpu: 1 mem: 128 }\n"
        "  component a { kind: stream cpu: 1 mem: 128 }\n"
        "  component b { kind: stream cpu: 1 mem: 128 }\n"
        "  flow cam -> a\n"
        "  flow a -> b\n"
        "  flow b -> a\n"
        "}\n"
    ))
    assert await main(["validate", spec]) == 1
    assert "E_CYCLE" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_parse_errors_carry_the_file_position(tmp_path, capsys):
    spec = _write(tmp_path, "broken.stratum", "pipeline p {\n  component\n")
    assert await main(["validate", spec]) == 1
    err = capsys.readouterr().err
    assert err.startswith(f"E_PARSE {spec}:")


@pytest.mark.asyncio
async def test_missing_file_is_an_io_error(tmp_path, capsys):
    assert await main(["validate", str(tmp_path / "absent.stratum")]) == 3
    assert capsys.readouterr().err.startswith("E_IO ")


def test_usage_errors_exit_with_one(capsys):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["plan", SPEC])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["plan", SPEC, "--topology", TOPOLOGY, "--exact", "--heuristic"])
    assert info.value.code == 1


@pytest.mark.asyncio
async def test_format_is_idempotent(tmp_path, capsys):
    assert await main(["format", SPEC]) == 0
    canonical = capsys.readouterr().out
    again = _write(tmp_path, "canonical.stratum", canonical)
    assert await main(["format", again]) == 0
    assert capsys.readouterr().out == canonical


@pytest.mark.asyncio
async def test_plan_smart_traffic(capsys):
    assert await main(["plan", SPEC, "--topology", TOPOLOGY]) == 0
    out = capsys.readouterr().out
    assert out == fixture_text("smart_traffic.plan.json")
    assert json.loads(out)["cost_per_hour"] == 3.45


@pytest.mark.asyncio
async def test_plan_without_gpus_is_infeasible(tmp_path, capsys):
    document = json.loads(fixture_text("topology.json"))
    for node in document["nodes"]:
        node["gpus"] = 0
    topology = _write(tmp_path, "no_gpu.json", json.dumps(document))
    assert await main(["plan", SPEC, "--topology", topology, "--exact"]) == 2
    out, err = capsys.readouterr()
    assert out == ""
    assert "E_INFEASIBLE plan: infeasible:" in err


@pytest.mark.asyncio
async def test_heuristic_can_miss_a_feasible_plan(capsys):
    spec, topology = fixture_path("adversarial.stratum"), fixture_path("adversarial_topology.json")
    assert await main(["plan", spec, "--topology", topology, "--heuristic"]) == 2
    assert "heuristic-infeasible" in capsys.readouterr().err
    assert await main(["plan", spec, "--topology", topology, "--exact"]) == 0
    assert json.loads(capsys.readouterr().out)["assignments"] == {"a": "pricey", "b": "pricey"}


@pytest.mark.asyncio
async def test_malformed_topology(tmp_path, capsys):
    topology = _write(tmp_path, "bad.json", '{"nodes": [{"id": "n"}]}')
    assert await main(["plan", SPEC, "--topology", topology]) == 3
    assert capsys.readouterr().err.startswith("E_FORMAT ")


@pytest.mark.asyncio
async def test_invalid_utf8_inputs(tmp_path, capsys):
    spec = tmp_path / "latin1.stratum"
    spec.write_bytes(b"pipeline p {\n  \xff\n}\n")
    assert await main(["validate", str(spec)]) == 1
    assert capsys.readouterr().err.startswith(f"E_PARSE {spec}:2:3: invalid UTF-8 byte 0xff")

    topology = tmp_path / "latin1.json"
    topology.write_bytes(b'{"nodes": [\xff]}')
    assert await main(["plan", SPEC, "--topology", str(topology)]) == 3
    assert capsys.readouterr().err.startswith(
        f"E_FORMAT {topology}:$: invalid UTF-8 byte 0xff at line 1, column 12")


@pytest.mark.asyncio
async def test_hand_edited_plans_are_refused(tmp_path, capsys):
    document = json.loads(fixture_text("smart_traffic.plan.json"))
    document["cost_per_hour"] = 0
    cheap = _write(tmp_path, "cheap.plan.json", json.dumps(document))
    out_dir = tmp_path / "deploy"
    code = await main(["generate", SPEC, "--topology", TOPOLOGY, "--plan", cheap,
                       "--registry", REGISTRY, "--out", str(out_dir)])
    assert code == 3
    assert capsys.readouterr().err.startswith(
        f"E_FORMAT {cheap}:$.cost_per_hour: recorded 0 but the assignment costs 3.45")
    assert not out_dir.exists()
    assert await main(["check", SPEC, "--topology", TOPOLOGY, "--plan", cheap]) == 3
    assert capsys.readouterr().out == ""

    document = json.loads(fixture_text("smart_traffic.plan.json"))
    document["replicas"]["trainer"] = 2
    crowded = _write(tmp_path, "crowded.plan.json", json.dumps(document))
    assert await main(["simulate", SPEC, "--topology", TOPOLOGY, "--plan", crowded, "--ticks", "5"]) == 3
    assert capsys.readouterr().err.startswith(
        f"E_FORMAT {crowded}:$.replicas.trainer: 2 replica(s) but the pipeline declares 1")


@pytest.mark.asyncio
async def test_check(tmp_path, capsys):
    assert await main(["check", SPEC, "--topology", TOPOLOGY, "--plan", PLAN]) == 0
    assert json.loads(capsys.readouterr().out) == {"feasible": True, "violations": []}

    document = json.loads(fixture_text("smart_traffic.plan.json"))
    document["assignments"]["recognizer"] = "fog1"
    plan = _write(tmp_path, "bad.plan.json", json.dumps(document))
    assert await main(["check", SPEC, "--topology", TOPOLOGY, "--plan", plan]) == 2
    out, err = capsys.readouterr()
    verdict = json.loads(out)
    assert not verdict["feasible"]
    assert {v["rule"] for v in verdict["violations"]} >= {"CAP_GPU", "TIER"}
    assert "CAP_GPU fog1" in err


@pytest.mark.asyncio
async def test_generate_writes_golden_manifests(tmp_path, capsys):
    out_dir = tmp_path / "deploy"
    code = await main(["generate", SPEC, "--topology", TOPOLOGY, "--plan", PLAN,
                       "--registry", REGISTRY, "--out", str(out_dir)])
    assert code == 0
    assert capsys.readouterr().out.splitlines() == [
        "cloud1.deploy.yaml", "edge1.deploy.yaml", "fog1.deploy.yaml", "index.yaml"]
    for golden in sorted((FIXTURES / "golden").iterdir()):
        assert (out_dir / golden.name).read_bytes() == golden.read_bytes()


@pytest.mark.asyncio
async def test_generate_with_unresolvable_model(tmp_path, capsys):
    registry = _write(tmp_path, "empty.json", '{"models": []}')
    code = await main(["generate", SPEC, "--topology", TOPOLOGY, "--plan", PLAN,
                       "--registry", registry, "--out", str(tmp_path / "deploy")])
    assert code == 2
    assert "E_CODEGEN generate: cannot resolve model traffic_net@latest" in capsys.readouterr().err
    assert not (tmp_path / "deploy").exists()


@pytest.mark.asyncio
async def test_generate_into_unwritable_location(tmp_path, capsys):
    blocker = _write(tmp_path, "blocker", "not a directory")
    code = await main(["generate", SPEC, "--topology", TOPOLOGY, "--plan", PLAN,
                       "--registry", REGISTRY, "--out", blocker])
    assert code == 3
    assert capsys.readouterr().err.startswith("E_IO ")


@pytest.mark.asyncio
async def test_simulate_prints_metrics_and_actions(capsys):
    code = await main(["simulate", SPEC, "--topology", TOPOLOGY, "--plan", PLAN, "--ticks", "10",
                       "--controller", "--override", "camera_ingest:0:60"])
    assert code == 0
    out, err = capsys.readouterr()
    lines = out.splitlines()
    assert lines[0] == "tick,component,host,replicas,in_rate,utilization,queue,completions"
    assert len(lines) == 1 + 10 * 5
    assert "tick,src,dst,latency_ms,violation" not in out
    assert "t=3 recognizer saturated gpu" in err
    assert "t=8 recognizer saturated gpu" in err


@pytest.mark.asyncio
async def test_simulate_to_directory(tmp_path, capsys):
    out_dir = tmp_path / "sim"
    code = await main(["simulate", SPEC, "--topology", fixture_path("topology_relief.json"), "--plan", PLAN,
                       "--ticks", "10", "--controller", "--override", "camera_ingest:0:60", "--out", str(out_dir)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert (out_dir / "actions.log").read_text() == "t=3 recognizer scale_out 2\n"
    assert (out_dir / "flows.csv").read_text().startswith("tick,src,dst,latency_ms,violation\n")
    metrics = (out_dir / "metrics.csv").read_text().splitlines()
    assert "6,recognizer,edge1,2,60,0.75,0,60" in metrics


@pytest.mark.asyncio
@pytest.mark.parametrize("override", ["dashboard:0:5", "camera_ingest:99:5", "camera_ingest:oops"])
async def test_simulate_rejects_bad_overrides(capsys, override):
    code = await main(["simulate", SPEC, "--topology", TOPOLOGY, "--plan", PLAN, "--ticks", "10",
                       "--override", override])
    assert code == 1
    assert capsys.readouterr().err.startswith("E_SIMULATION simulate:")


@pytest.mark.asyncio
async def test_simulate_refuses_infeasible_plan(tmp_path, capsys):
    document = json.loads(fixture_text("smart_traffic.plan.json"))
    document["replicas"]["recognizer"] = 2
    plan = _write(tmp_path, "crowded.plan.json", json.dumps(document))
    assert await main(["simulate", SPEC, "--topology", TOPOLOGY, "--plan", plan, "--ticks", "5"]) == 2
    assert "CAP_GPU edge1" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_registry_lifecycle(tmp_path, capsys):
    registry = str(tmp_path / "models.json")
    assert await main(["registry", "--registry", registry, "add", "traffic_net", "v1", "--size-mb", "45",
                       "--metric", "accuracy=0.88", "--gpu-required"]) == 0
    assert json.loads(capsys.readouterr().out)["created_seq"] == 0
    assert await main(["registry", "--registry", registry, "add", "traffic_net", "v2", "--size-mb", "52",
                       "--metric", "accuracy=0.93", "--metric", "latency_ms=15"]) == 0
    assert json.loads(capsys.readouterr().out)["created_seq"] == 1

    assert await main(["registry", "--registry", registry, "list", "traffic_net"]) == 0
    assert [m["version"] for m in json.loads(capsys.readouterr().out)["models"]] == ["v1", "v2"]

    assert await main(["registry", "--registry", registry, "select", "traffic_net"]) == 0
    assert json.loads(capsys.readouterr().out)["version"] == "v2"
    assert await main(["registry", "--registry", registry, "select", "traffic_net",
                       "--strategy", "minimize:accuracy"]) == 0
    assert json.loads(capsys.readouterr().out)["version"] == "v1"


@pytest.mark.asyncio
async def test_registry_errors(tmp_path, capsys):
    assert await main(["registry", "--registry", REGISTRY, "select", "traffic_net",
                       "--strategy", "maximize:f1"]) == 1
    assert capsys.readouterr().err.startswith("E_REGISTRY registry_select:")

    registry = str(tmp_path / "models.json")
    assert await main(["registry", "--registry", registry, "add", "m", "latest", "--size-mb", "1"]) == 1
    assert await main(["registry", "--registry", registry, "add", "m", "v1", "--size-mb", "0"]) == 1
    assert await main(["registry", "--registry", registry, "add", "m", "v1", "--size-mb", "1",
                       "--metric", "accuracy"]) == 1
    assert not (tmp_path / "models.json").exists()


@pytest.mark.asyncio
async def test_registry_list_without_file(tmp_path, capsys):
    assert await main(["registry", "--registry", str(tmp_path / "none.json"), "list"]) == 0
    assert json.loads(capsys.readouterr().out) == {"models": []}


@pytest.mark.asyncio
async def test_engine_keeps_no_event_history():
    engine = DeploymentEngine()
    result = await engine.execute("simulate", spec_path=SPEC, topology_path=TOPOLOGY, plan_path=PLAN, ticks=20)
    assert int(result.exit_code) == 0
    assert engine.bus.get_event_history() == []
