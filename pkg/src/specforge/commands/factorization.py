"""
Factorization Commands

factor-sets: ladder of an integer pair A + B = {0, ..., n-1}.
factor-measures: ladder of a measure pair read from JSON.
enumerate-pairs: every complementary set pair for n, each factored and
re-expanded.
"""

from pathlib import Path
import argparse
import json
import logging

from specforge.commands.common import check, parse_int_list
from specforge.core.errors import InputError
from specforge.schemas.factorization import LadderResultSchema, SetPairSchema
from specforge.schemas.measures import MeasurePairSchema
from specforge.schemas.report import RunReport
from specforge.tools.factorizer import (
    enumerate_complementary_pairs,
    expand_ladder,
    expand_sets,
    factor_sets,
    factor_uniform_pair,
)

logger = logging.getLogger(__name__)


def register(subparsers, parents):
    p = subparsers.add_parser("factor-sets", parents=parents, help="ladder of A + B = {0..n-1}")
    p.add_argument("--A", dest="set_a", required=True, help="comma-separated, must contain 0")
    p.add_argument("--B", dest="set_b", required=True, help="comma-separated, must contain 0")
    p.add_argument("--n", type=int, default=None, help="defaults to max(A) + max(B) + 1")
    p.set_defaults(handler=factor_sets_command)

    p = subparsers.add_parser("factor-measures", parents=parents, help="ladder of a measure pair")
    p.add_argument("--file", required=True, help='JSON {"p": measure, "q": measure}')
    p.set_defaults(handler=factor_measures_command)

    p = subparsers.add_parser("enumerate-pairs", parents=parents, help="all complementary set pairs for n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=enumerate_pairs_command)


def factor_sets_command(args: argparse.Namespace) -> RunReport:
    a = parse_int_list(args.set_a)
    b = parse_int_list(args.set_b)
    if not a or not b:
        raise InputError("both sets must be non-empty")
    n = args.n if args.n is not None else max(a) + max(b) + 1
    request = SetPairSchema(A=a, B=b, n=n)

    result = factor_sets(request.to_domain())
    expanded = expand_sets(result)
    round_trip = expanded["A"] == tuple(sorted(a)) and expanded["B"] == tuple(sorted(b))

    report = RunReport(
        command="factor-sets",
        inputs=request.model_dump(),
        outputs=LadderResultSchema.for_sets(result).model_dump(),
    )
    report.results.append(check("round_trip", round_trip, detail="re-expansion reproduces A and B"))
    logger.info(f"A + B = {{0..{n - 1}}} factors through ladder {result.digit_order()}")
    return report.finalize()


def factor_measures_command(args: argparse.Namespace) -> RunReport:
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read measure file {args.file}: {e}")
    pair = MeasurePairSchema.model_validate(data)
    p, q = pair.p.to_domain(), pair.q.to_domain()

    result = factor_uniform_pair(p, q)
    expanded = expand_ladder(result)

    report = RunReport(
        command="factor-measures",
        inputs={"file": args.file},
        outputs=LadderResultSchema.for_measures(result).model_dump(),
    )
    report.results.append(
        check("round_trip", expanded["p"] == p and expanded["q"] == q, detail="re-expansion reproduces p and q")
    )
    return report.finalize()


def enumerate_pairs_command(args: argparse.Namespace) -> RunReport:
    pairs = enumerate_complementary_pairs(args.n)

    listed = []
    failures = 0
    for sp in pairs:
        result = factor_sets(sp)
        expanded = expand_sets(result)
        if expanded["A"] != sp.a or expanded["B"] != sp.b:
            failures += 1
            logger.error(f"pair {sp.a}, {sp.b} does not re-expand")
        listed.append({
            **SetPairSchema.from_domain(sp).model_dump(),
            "ladder": list(result.digit_order()),
            "first_side": result.first_side,
        })

    report = RunReport(
        command="enumerate-pairs",
        inputs={"n": args.n},
        outputs={"count": len(pairs), "pairs": listed},
    )
    report.results.append(
        check("round_trip", failures == 0, value=float(len(pairs)), detail=f"{failures} pairs failed re-expansion")
    )
    return report.finalize()
