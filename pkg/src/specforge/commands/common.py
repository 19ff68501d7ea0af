"""
Command Helpers

Shared flags, input parsing and report emission for the subcommands.
"""

from pydantic import BaseModel, Field, field_validator
from typing import List, Optional, Tuple
import argparse
import csv
import logging
import sys

from specforge.core.config import settings
from specforge.core.errors import InputError
from specforge.schemas.report import CheckResult, RunReport
from specforge.tools.ladder import Decomposition, FactorSpec, Ladder, Side, complementary_pair

logger = logging.getLogger(__name__)


def parse_int_list(text: str) -> List[int]:
    """'0,1,4' -> [0, 1, 4]; the empty string is the empty list"""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def common_flags() -> argparse.ArgumentParser:
    """Flags every subcommand accepts; unset values fall back to settings"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--tol", type=float, default=None, help=f"numeric tolerance (default {settings.tol})")
    parent.add_argument("--window", type=int, default=None, help=f"integer window W (default {settings.window})")
    parent.add_argument("--trunc", type=int, default=None, help=f"truncation K (default {settings.trunc})")
    parent.add_argument("--grid", type=int, default=None, help=f"grid size G (default {settings.grid})")
    parent.add_argument("--threads", type=int, default=None, help="worker threads (default: available cores)")
    parent.add_argument("--json-only", action="store_true", help="no human summary on stderr")
    return parent


def pair_flags(parser: argparse.ArgumentParser):
    """Flags describing a complementary pair of one ladder"""
    parser.add_argument("--ladder", required=True, help="comma-separated entries, e.g. 2,2 (empty for none)")
    parser.add_argument("--repeat", type=int, default=1, help="repeat the ladder pattern this many times")
    parser.add_argument("--type", dest="decomposition", choices=["I", "II"], required=True)
    parser.add_argument("--tail", choices=["odd", "even"], default=None, help="Type I: side carrying the Lebesgue tail")
    parser.add_argument("--level", type=int, default=None, help="Type II: truncation level k")


class PairRequest(BaseModel):
    """Validated pair flags"""
    ladder: List[int]
    repeat: int = Field(1, ge=1)
    decomposition: str
    tail: Optional[str] = None
    level: Optional[int] = Field(None, ge=0)

    @field_validator("ladder")
    @classmethod
    def _entries(cls, v):
        bad = [e for e in v if e < 2 or e > settings.max_entry]
        if bad:
            raise ValueError(f"ladder entries must lie in [2, {settings.max_entry}], got {bad}")
        return v

    def to_pair(self) -> Tuple[FactorSpec, FactorSpec]:
        ladder = Ladder.from_pattern(self.ladder, self.repeat) if self.ladder else Ladder()
        return complementary_pair(
            ladder,
            Decomposition(self.decomposition),
            Side(self.tail) if self.tail else None,
            self.level,
        )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "PairRequest":
        return cls(
            ladder=parse_int_list(args.ladder),
            repeat=args.repeat,
            decomposition=args.decomposition,
            tail=args.tail,
            level=args.level,
        )


def option(args: argparse.Namespace, name: str):
    value = getattr(args, name, None)
    return getattr(settings, name) if value is None else value


def write_csv(path: str, header: List[str], rows: List[List]):
    """Floats are written with repr so reruns produce identical bytes"""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(c)) for c in row])
    logger.info(f"Wrote {len(rows)} rows to {path}")


def summary(report: RunReport) -> str:
    lines = [f"{report.command}: {'passed' if report.exit_code == 0 else 'FAILED'} (exit {report.exit_code})"]
    for r in report.results:
        mark = "✅" if r.passed else "❌"
        extra = ""
        if r.value is not None:
            extra = f" value={r.value:.6e}"
            if r.bound is not None:
                extra += f" bound={r.bound:.3e}"
        if r.detail and not r.passed:
            extra += f" ({r.detail})"
        lines.append(f"  {mark} {r.name}{extra}")
    return "\n".join(lines)


def emit(report: RunReport, json_only: bool = False):
    """JSON on stdout, human summary on stderr"""
    sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    if not json_only:
        sys.stderr.write(summary(report) + "\n")


def check(name: str, passed: bool, **kwargs) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), **kwargs)
