"""CSV and action-log rendering of simulation reports."""
import csv
import io
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Dict, Iterable, List, Optional

from core.services.logging import setup_logger
from core.services.storage import ensure_directory, write_text_atomic
from core.services.storage.json_codec import format_decimal
from core.settings import ACTION_LOG, FLOWS_CSV, METRICS_CSV
from ..schemas.sim_report import SimReport

logger = setup_logger(__name__)

METRICS_HEADER = ["tick", "component", "host", "replicas", "in_rate", "utilization", "queue", "completions"]
FLOWS_HEADER = ["tick", "src", "dst", "latency_ms", "violation"]

# Fixed precision for printed ratios; arithmetic stays exact
PRINT_QUANTUM = Decimal("0.000001")


def _number(value: Optional[Decimal]) -> str:
    if value is None:
        return ""
    return format_decimal(value.quantize(PRINT_QUANTUM, rounding=ROUND_HALF_EVEN))


def _csv(header: List[str], rows: Iterable[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def metrics_csv(report: SimReport) -> str:
    return _csv(METRICS_HEADER, (
        [str(m.tick), m.component, m.host, str(m.replicas), _number(m.in_rate),
         _number(m.utilization), _number(m.queue), _number(m.completions)]
        for tick in report.ticks for m in tick.components
    ))


def flows_csv(report: SimReport) -> str:
    """Unlinked host pairs leave latency_ms empty."""
    return _csv(FLOWS_HEADER, (
        [str(f.tick), f.src, f.dst, _number(f.latency_ms), "true" if f.violation else "false"]
        for tick in report.ticks for f in tick.flows
    ))


def action_log(report: SimReport) -> str:
    return "".join(f"{a.render()}\n" for a in report.actions)


def render_outputs(report: SimReport) -> Dict[str, str]:
    return {
        METRICS_CSV: metrics_csv(report),
        FLOWS_CSV: flows_csv(report),
        ACTION_LOG: action_log(report),
    }


async def write_outputs(out_dir: str, report: SimReport) -> None:
    directory = await ensure_directory(out_dir)
    for name, content in render_outputs(report).items():
        await write_text_atomic(directory / name, content)
    logger.info(f"Wrote simulation outputs to {directory}")
