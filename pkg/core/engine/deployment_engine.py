"""Coordinates parsing, validation, placement, code generation and simulation for the cli."""
from decimal import Decimal, InvalidOperation
from typing import Dict, Optional, Sequence, Tuple

from pydantic import ValidationError

from core.codegen.tools.manifest_generator import build_index, generate
from core.codegen.tools.manifest_writer import render_tree, write_tree
from core.elasticity.schemas.policy import PolicyConfig
from core.elasticity.tools.elasticity_controller import ElasticityController
from core.language.schemas.pipeline_spec import IDENTIFIER_RE, LATEST, VERSION_RE, PipelineSpec
from core.language.tools.parser import parse_spec
from core.language.tools.printer import pretty_print
from core.placement.schemas.placement_plan import PlacementPlan
from core.placement.tools.exact_planner import plan_exact
from core.placement.tools.feasibility_checker import PlacementProblem, check_feasible
from core.placement.tools.greedy_planner import plan_heuristic
from core.placement.tools.plan_io import check_plan_matches, read_plan, serialize_plan
from core.registry.schemas.model_record import EvalStrategy, ModelRecord, ModelStore
from core.registry.tools.model_registry import ModelRegistry, select_best, serialize_store
from core.services.error_handling import (
    CodegenError,
    EncodingError,
    FormatError,
    InfeasibleError,
    ParseError,
    RegistryError,
    SimulationError,
    SpecValidationError,
    StratumError,
)
from core.services.event_bus import Event, EventBus
from core.services.logging import setup_logger
from core.services.storage import json_codec, read_text
from core.settings import EXACT_ENUMERATION_LIMIT, STRATUM_DEFAULT_STRATEGY, STRATUM_REGISTRY
from core.simulation.schemas.sim_state import RateOverride, SimConfig
from core.simulation.tools.fluid_simulator import FluidSimulator
from core.simulation.tools.report_writer import action_log, metrics_csv, write_outputs
from core.topology.schemas.resource_topology import ResourceTopology
from core.topology.tools.topology_loader import read_topology
from core.validation.tools.constraint_checker import validate
from .schemas.command_result import CommandResult, ExitCode

logger = setup_logger(__name__)

ERROR_CODES = (
    (ParseError, "E_PARSE"),
    (FormatError, "E_FORMAT"),
    (RegistryError, "E_REGISTRY"),
    (CodegenError, "E_CODEGEN"),
    (SimulationError, "E_SIMULATION"),
    (InfeasibleError, "E_INFEASIBLE"),
    (StratumError, "E_STRATUM"),
    (OSError, "E_IO"),
)


def exit_code_for(error: Exception) -> ExitCode:
    """The one exit code each failure maps to."""
    if isinstance(error, (FormatError, OSError)):
        return ExitCode.IO_ERROR
    if isinstance(error, (InfeasibleError, CodegenError)):
        return ExitCode.INFEASIBLE
    if isinstance(error, StratumError):
        return ExitCode.INVALID
    raise error


def diagnostics_for(error: Exception, command: str) -> Tuple[str, ...]:
    """Render a failure as ``CODE subject: message`` lines."""
    if isinstance(error, SpecValidationError):
        return error.lines
    code = next(c for kind, c in ERROR_CODES if isinstance(error, kind))
    if isinstance(error, ParseError):
        return (f"{code} {error.source or '-'}:{error.line}:{error.column}: {error.message}",)
    if isinstance(error, FormatError):
        return (f"{code} {error.source or '-'}:{error.location}: {error.message}",)
    if isinstance(error, OSError):
        return (f"{code} {error.filename or '-'}: {error.strerror or error}",)
    if isinstance(error, InfeasibleError):
        return error.lines + (f"{code} {command}: {error}",)
    return (f"{code} {command}: {error}",)


class DeploymentEngine:
    """Runs one command per call; every failure becomes an exit code plus stderr lines."""

    def __init__(self, registry_path: Optional[str] = None, bus: Optional[EventBus] = None):
        self.registry_path = registry_path or STRATUM_REGISTRY
        self.bus = bus or EventBus(keep_history=False)
        self.bus.subscribe("controller.action", self._log_event)
        self.bus.subscribe("controller.rejected", self._log_event)

    def _log_event(self, event: Event) -> None:
        logger.info(f"{event.type} at tick {event.tick}: {event.get('component')} {event.get('kind')} {event.get('detail')}")

    async def execute(self, command: str, **kwargs) -> CommandResult:
        handler = getattr(self, f"cmd_{command}")
        try:
            return await handler(**kwargs)
        except (StratumError, OSError) as e:
            logger.debug(f"Command {command} failed: {e}")
            return CommandResult(exit_code=exit_code_for(e), diagnostics=diagnostics_for(e, command))

    # Loading

    async def _read_spec(self, path: str) -> PipelineSpec:
        try:
            source = await read_text(path)
        except EncodingError as e:
            raise ParseError(e.line, e.column, e.reason, source=path) from e
        try:
            return parse_spec(source)
        except ParseError as e:
            raise ParseError(e.line, e.column, e.message, source=path) from e

    async def _read_valid_spec(self, path: str) -> PipelineSpec:
        spec = await self._read_spec(path)
        report = validate(spec)
        if not report.ok:
            raise SpecValidationError(issue.render() for issue in report.errors)
        return spec

    async def _read_feasible(self, spec: PipelineSpec, topology: ResourceTopology, plan_path: str) -> PlacementPlan:
        plan = await read_plan(plan_path)
        verdict = check_feasible(spec, topology, plan)
        if not verdict.feasible:
            raise InfeasibleError(
                f"plan {plan_path} is infeasible",
                lines=[f"{v.rule.value} {v.subject}: {v.detail}" for v in verdict.violations],
            )
        check_plan_matches(spec, topology, plan, origin=plan_path)
        return plan

    def _registry(self, registry_path: Optional[str]) -> ModelRegistry:
        return ModelRegistry(registry_path or self.registry_path)

    # Commands

    async def cmd_validate(self, spec_path: str) -> CommandResult:
        await self._read_valid_spec(spec_path)
        return CommandResult()

    async def cmd_format(self, spec_path: str) -> CommandResult:
        return CommandResult(stdout=pretty_print(await self._read_spec(spec_path)))

    async def cmd_plan(self, spec_path: str, topology_path: str, mode: str = "auto") -> CommandResult:
        spec = await self._read_valid_spec(spec_path)
        topology = await read_topology(topology_path)

        if mode == "auto":
            space = PlacementProblem(spec, topology).search_space
            mode = "exact" if space <= EXACT_ENUMERATION_LIMIT else "heuristic"
            logger.info(f"Search space {space}: using {mode} planner")

        if mode == "exact":
            plan = plan_exact(spec, topology)
            if plan is None:
                raise InfeasibleError("infeasible: no assignment satisfies every constraint (exhaustive search)")
        else:
            plan = plan_heuristic(spec, topology)
            if plan is None:
                raise InfeasibleError(
                    "heuristic-infeasible: greedy placement got stuck; a feasible plan may still exist",
                    proven=False,
                )
        return CommandResult(stdout=serialize_plan(plan))

    async def cmd_check(self, spec_path: str, topology_path: str, plan_path: str) -> CommandResult:
        spec = await self._read_valid_spec(spec_path)
        topology = await read_topology(topology_path)
        plan = await read_plan(plan_path)
        verdict = check_feasible(spec, topology, plan)
        if verdict.feasible:
            check_plan_matches(spec, topology, plan, origin=plan_path)
        return CommandResult(
            exit_code=ExitCode.OK if verdict.feasible else ExitCode.INFEASIBLE,
            stdout=json_codec.dumps(verdict.to_document()),
            diagnostics=tuple(f"{v.rule.value} {v.subject}: {v.detail}" for v in verdict.violations),
        )

    async def cmd_generate(self, spec_path: str, topology_path: str, plan_path: str, out_dir: str,
                           registry_path: Optional[str] = None, strategy: Optional[str] = None) -> CommandResult:
        spec = await self._read_valid_spec(spec_path)
        topology = await read_topology(topology_path)
        plan = await self._read_feasible(spec, topology, plan_path)
        eval_strategy = EvalStrategy.parse(strategy or STRATUM_DEFAULT_STRATEGY)

        store = ModelStore()
        if any(c.model is not None for c in spec.components):
            store = await self._registry(registry_path).load()

        manifests = generate(spec, topology, plan, store, eval_strategy)
        tree = render_tree(manifests, build_index(spec, plan, manifests))
        await write_tree(out_dir, tree)
        return CommandResult(stdout="".join(f"{name}\n" for name in sorted(tree)))

    async def cmd_simulate(self, spec_path: str, topology_path: str, plan_path: str, ticks: int,
                           controller: bool = False, overrides: Sequence[str] = (),
                           out_dir: Optional[str] = None, policy: Optional[PolicyConfig] = None) -> CommandResult:
        spec = await self._read_valid_spec(spec_path)
        topology = await read_topology(topology_path)
        plan = await self._read_feasible(spec, topology, plan_path)
        try:
            config = SimConfig(ticks=ticks, rate_overrides=tuple(RateOverride.parse(o) for o in overrides))
        except ValidationError as e:
            raise SimulationError(_first_error(e))
        except (ValueError, InvalidOperation) as e:
            raise SimulationError(f"invalid override: {e}")

        policy_controller = ElasticityController(spec, topology, policy) if controller else None
        report = FluidSimulator(spec, topology, self.bus).run(plan, config, policy_controller)
        for name, summary in report.summary.items():
            logger.info(f"{name}: peak utilization {summary.peak_utilization}, "
                        f"final queue {summary.final_queue}, completions {summary.total_completions}")

        if out_dir is not None:
            await write_outputs(out_dir, report)
            return CommandResult()
        return CommandResult(stdout=metrics_csv(report), diagnostics=tuple(action_log(report).splitlines()))

    async def cmd_registry_add(self, name: str, version: str, size_mb: str, metrics: Sequence[str] = (),
                               gpu_required: bool = False, registry_path: Optional[str] = None) -> CommandResult:
        if not IDENTIFIER_RE.fullmatch(name):
            raise RegistryError(f"invalid model name '{name}'")
        if not VERSION_RE.fullmatch(version) or version == LATEST:
            raise RegistryError(f"invalid model version '{version}'")
        try:
            record = ModelRecord(
                name=name,
                version=version,
                metrics=_parse_metrics(metrics),
                size_mb=Decimal(size_mb),
                gpu_required=gpu_required,
            )
        except ValidationError as e:
            raise RegistryError(f"invalid model record: {_first_error(e)}")
        except InvalidOperation:
            raise RegistryError(f"size_mb has non-numeric value '{size_mb}'")
        stored = await self._registry(registry_path).add(record)
        return CommandResult(stdout=json_codec.dumps(stored.model_dump(mode="python")))

    async def cmd_registry_list(self, name: Optional[str] = None, registry_path: Optional[str] = None) -> CommandResult:
        store = await self._registry(registry_path).load(missing_ok=True)
        if name is not None:
            store = ModelStore(models=store.versions(name))
        return CommandResult(stdout=serialize_store(store))

    async def cmd_registry_select(self, name: str, strategy: Optional[str] = None,
                                  registry_path: Optional[str] = None) -> CommandResult:
        store = await self._registry(registry_path).load()
        best = select_best(store, name, EvalStrategy.parse(strategy or STRATUM_DEFAULT_STRATEGY))
        return CommandResult(stdout=json_codec.dumps(best.model_dump(mode="python")))


def _parse_metrics(pairs: Sequence[str]) -> Dict[str, Decimal]:
    """``accuracy=0.93`` pairs to a metric mapping."""
    metrics: Dict[str, Decimal] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not IDENTIFIER_RE.fullmatch(key):
            raise RegistryError(f"invalid metric '{pair}', expected name=value")
        try:
            metrics[key] = Decimal(value)
            if not metrics[key].is_finite():
                raise InvalidOperation
        except InvalidOperation:
            raise RegistryError(f"metric '{key}' has non-numeric value '{value}'")
    return metrics


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]
