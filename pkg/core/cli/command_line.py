"""Argument parsing and dispatch for the ``stratum`` command."""
import argparse
import sys
from typing import Any, Dict, Optional, Sequence

from core.engine.deployment_engine import DeploymentEngine
from core.engine.schemas.command_result import CommandResult, ExitCode
from core.services.logging import log_exception, report_line, setup_logger

logger = setup_logger(__name__)


class StratumArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the validation code; 2 is reserved for infeasibility."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(int(ExitCode.INVALID), f"{self.prog}: error: {message}\n")


def _add_inputs(parser: argparse.ArgumentParser, plan: bool = True) -> None:
    parser.add_argument("spec", help="Pipeline specification file")
    parser.add_argument("--topology", required=True, help="Topology JSON file")
    if plan:
        parser.add_argument("--plan", required=True, help="Plan JSON file produced by 'plan'")


def build_parser() -> argparse.ArgumentParser:
    parser = StratumArgumentParser(prog="stratum", description="ML pipeline lifecycle manager for cloud, fog and edge")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Parse and constraint-check a spec")
    validate.add_argument("spec", help="Pipeline specification file")

    fmt = commands.add_parser("format", help="Print the canonical text of a spec")
    fmt.add_argument("spec", help="Pipeline specification file")

    plan = commands.add_parser("plan", help="Place components on the topology")
    _add_inputs(plan, plan=False)
    solver = plan.add_mutually_exclusive_group()
    solver.add_argument("--exact", dest="mode", action="store_const", const="exact", help="Exhaustive optimal search")
    solver.add_argument("--heuristic", dest="mode", action="store_const", const="heuristic", help="Greedy placement")
    plan.set_defaults(mode="auto")

    check = commands.add_parser("check", help="Report whether a plan satisfies every constraint")
    _add_inputs(check)

    generate = commands.add_parser("generate", help="Write per-node deployment manifests")
    _add_inputs(generate)
    generate.add_argument("--registry", help="Registry JSON file (default: $STRATUM_REGISTRY)")
    generate.add_argument("--strategy", help="Model selection strategy, e.g. maximize:accuracy")
    generate.add_argument("--out", required=True, help="Output directory")

    simulate = commands.add_parser("simulate", help="Run the fluid simulation of a plan")
    _add_inputs(simulate)
    simulate.add_argument("--ticks", type=int, required=True, help="Number of one-second ticks")
    simulate.add_argument("--controller", action="store_true", help="Enable the elasticity controller")
    simulate.add_argument("--override", action="append", default=[], metavar="COMP:TICK:RATE",
                          help="Change an ingestion rate from a tick onwards (repeatable)")
    simulate.add_argument("--out", help="Directory for metrics.csv, flows.csv and actions.log")

    registry = commands.add_parser("registry", help="Manage saved models")
    registry.add_argument("--registry", help="Registry JSON file (default: $STRATUM_REGISTRY)")
    actions = registry.add_subparsers(dest="registry_command", required=True)

    add = actions.add_parser("add", help="Register a model version")
    add.add_argument("name")
    add.add_argument("version")
    add.add_argument("--size-mb", required=True, help="Artifact size in MB")
    add.add_argument("--metric", action="append", default=[], metavar="NAME=VALUE", help="Evaluation metric (repeatable)")
    add.add_argument("--gpu-required", action="store_true", help="Serving the model needs a GPU")

    listing = actions.add_parser("list", help="Print registered models")
    listing.add_argument("name", nargs="?", help="Only versions of this model")

    select = actions.add_parser("select", help="Print the best version of a model")
    select.add_argument("name")
    select.add_argument("--strategy", help="maximize:<metric> or minimize:<metric>")

    return parser


def command_arguments(args: argparse.Namespace) -> Dict[str, Any]:
    """Translate parsed arguments into an engine command name and keyword arguments."""
    if args.command == "validate":
        return {"command": "validate", "spec_path": args.spec}
    if args.command == "format":
        return {"command": "format", "spec_path": args.spec}
    if args.command == "plan":
        return {"command": "plan", "spec_path": args.spec, "topology_path": args.topology, "mode": args.mode}
    if args.command == "check":
        return {"command": "check", "spec_path": args.spec, "topology_path": args.topology, "plan_path": args.plan}
    if args.command == "generate":
        return {"command": "generate", "spec_path": args.spec, "topology_path": args.topology,
                "plan_path": args.plan, "out_dir": args.out, "registry_path": args.registry,
                "strategy": args.strategy}
    if args.command == "simulate":
        return {"command": "simulate", "spec_path": args.spec, "topology_path": args.topology,
                "plan_path": args.plan, "ticks": args.ticks, "controller": args.controller,
                "overrides": args.override, "out_dir": args.out}

    registry = {"registry_path": args.registry}
    if args.registry_command == "add":
        return {"command": "registry_add", "name": args.name, "version": args.version, "size_mb": args.size_mb,
                "metrics": args.metric, "gpu_required": args.gpu_required, **registry}
    if args.registry_command == "list":
        return {"command": "registry_list", "name": args.name, **registry}
    return {"command": "registry_select", "name": args.name, "strategy": args.strategy, **registry}


def emit(result: CommandResult) -> int:
    if result.stdout:
        sys.stdout.write(result.stdout)
        sys.stdout.flush()
    for line in result.diagnostics:
        report_line(line)
    return int(result.exit_code)


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    args = build_parser().parse_args(argv)
    kwargs = command_arguments(args)
    command = kwargs.pop("command")
    logger.debug(f"Running command {command}")
    try:
        result = await DeploymentEngine().execute(command, **kwargs)
    except Exception as e:
        log_exception(logger, e, f"command '{command}'")
        return int(ExitCode.INVALID)
    return emit(result)
