"""
Construction Commands

decompose: both factor measures of a pair, their spectra and the exact
factor chain status.
ft-grid: truncated transforms of one factor on a frequency grid, as CSV.
"""

import argparse
import logging

import numpy as np

from specforge.commands.common import PairRequest, check, option, pair_flags, write_csv
from specforge.core.errors import InputError
from specforge.jobs.verification_suite import exact_extent_length, require_within_cap
from specforge.schemas.measures import FactorSpecSchema, MeasureSchema, SegmentSchema
from specforge.schemas.report import RunReport
from specforge.schemas.spectra import SpectrumSchema
from specforge.services.grid_pool import GridPool
from specforge.tools.fourier import transform_rows
from specforge.tools.ladder import Ladder, Side, factor_measure, verify_pair
from specforge.tools.spectra import spectrum_of

logger = logging.getLogger(__name__)


def register(subparsers, parents):
    p = subparsers.add_parser("decompose", parents=parents, help="build a Type I or Type II pair")
    pair_flags(p)
    p.set_defaults(handler=decompose)

    p = subparsers.add_parser("ft-grid", parents=parents, help="transform of one factor on a grid (CSV)")
    pair_flags(p)
    p.add_argument("--side", choices=["odd", "even"], default="odd")
    p.add_argument("--xi-min", type=float, default=-10.0)
    p.add_argument("--xi-max", type=float, default=10.0)
    p.add_argument("--out", required=True, help="CSV path")
    p.set_defaults(handler=ft_grid)


def decompose(args: argparse.Namespace) -> RunReport:
    request = PairRequest.from_args(args)
    odd, even = request.to_pair()
    for spec in (odd, even):
        require_within_cap(spec)

    report = RunReport(command="decompose", inputs=request.model_dump())
    for spec in (odd, even):
        discrete, tail = factor_measure(spec)
        report.outputs[spec.side.value] = {
            "spec": FactorSpecSchema.from_domain(spec).model_dump(),
            "discrete": MeasureSchema.from_domain(discrete).model_dump(),
            "tail": SegmentSchema.from_domain(tail).model_dump() if tail else None,
            "spectrum": SpectrumSchema.from_domain(spectrum_of(spec)).model_dump(),
        }
        logger.info(f"{spec.side.value} side: {len(discrete)} atoms{' + Lebesgue tail' if tail else ''}")

    exact = Ladder(odd.ladder.entries[:exact_extent_length(odd)])
    report.results.append(check("factor_chain", verify_pair(exact), detail=f"ladder {exact.entries}"))
    return report.finalize()


def ft_grid(args: argparse.Namespace) -> RunReport:
    request = PairRequest.from_args(args)
    odd, even = request.to_pair()
    spec = odd if Side(args.side) is Side.ODD else even
    K = option(args, "trunc")
    G = option(args, "grid")
    if G < 1:
        raise InputError(f"grid size must be >= 1, got {G}")
    if args.xi_min > args.xi_max:
        raise InputError(f"empty frequency range [{args.xi_min}, {args.xi_max}]")

    xis = np.linspace(args.xi_min, args.xi_max, G)
    with GridPool(args.threads) as pool:
        rows = transform_rows(spec, K, xis, map_fn=pool.map)

    write_csv(args.out, ["xi", "re", "im", "abs", "bound"], rows)

    report = RunReport(
        command="ft-grid",
        inputs={**request.model_dump(), "side": args.side, "trunc": K, "grid": G},
        outputs={"csv": args.out, "rows": len(rows)},
    )
    worst = max(r[4] for r in rows)
    report.results.append(check("bounds_finite", np.isfinite(worst), value=worst, detail="largest reported bound"))
    return report.finalize()
