"""
Verification Commands

verify: full certificate suite for one pair.
qplot: Q_k over a frequency grid for k = 1..k_max, as CSV, with the
monotonicity summary.
"""

from pathlib import Path
import argparse
import json
import logging

from specforge.commands.common import PairRequest, check, option, pair_flags, write_csv
from specforge.core.errors import InputError
from specforge.jobs.verification_suite import SuiteOptions, VerificationSuite, require_within_cap
from specforge.schemas.report import RunReport
from specforge.schemas.spectra import SpectrumSchema
from specforge.services.grid_pool import GridPool
from specforge.tools.ladder import Decomposition, FactorSpec, Side
from specforge.tools.spectra import lambda_k, q_grid, spectrum_of, xi_grid

logger = logging.getLogger(__name__)


def register(subparsers, parents):
    p = subparsers.add_parser("verify", parents=parents, help="run every check on a pair")
    pair_flags(p)
    p.add_argument("--spectrum-file", default=None, help="JSON spectrum replacing one side's spectrum")
    p.add_argument("--spectrum-side", choices=["odd", "even"], default="odd")
    p.set_defaults(handler=verify)

    p = subparsers.add_parser("qplot", parents=parents, help="Q_k grid data (CSV)")
    pair_flags(p)
    p.add_argument("--side", choices=["odd", "even"], default="odd")
    p.add_argument("--k-max", type=int, default=None, help="largest spectrum level (Type II)")
    p.add_argument("--out", required=True, help="CSV path")
    p.set_defaults(handler=qplot)


def load_spectrum(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read spectrum file {path}: {e}")
    return SpectrumSchema.model_validate(data).to_domain()


def verify(args: argparse.Namespace) -> RunReport:
    request = PairRequest.from_args(args)
    odd, even = request.to_pair()

    overrides = {}
    if args.spectrum_file:
        overrides[Side(args.spectrum_side)] = load_spectrum(args.spectrum_file)

    options = SuiteOptions(
        window=option(args, "window"),
        grid=option(args, "grid"),
        trunc=option(args, "trunc"),
        tol=option(args, "tol"),
    )
    if options.window < 0 or options.grid < 1 or options.trunc < 1:
        raise InputError("window must be >= 0, grid and trunc >= 1")
    if options.window == 0:
        logger.warning("window 0: window checks pass vacuously")

    with GridPool(args.threads) as pool:
        results = VerificationSuite(pool, options).run(odd, even, overrides)

    inputs = request.model_dump()
    inputs.update(window=options.window, grid=options.grid, trunc=options.trunc, tol=options.tol)
    if args.spectrum_file:
        inputs.update(spectrum_file=args.spectrum_file, spectrum_side=args.spectrum_side)
    return RunReport(command="verify", inputs=inputs, results=results).finalize()


def _levels(spec: FactorSpec, k_max):
    if spec.decomposition is Decomposition.TYPE_I:
        return [spec.k]
    k_max = spec.k if k_max is None else k_max
    if not 1 <= k_max <= spec.available:
        raise InputError(f"k_max must lie in [1, {spec.available}], got {k_max}")
    return list(range(1, k_max + 1))


def qplot(args: argparse.Namespace) -> RunReport:
    request = PairRequest.from_args(args)
    odd, even = request.to_pair()
    spec = odd if Side(args.side) is Side.ODD else even
    require_within_cap(spec)

    K = option(args, "trunc")
    G = option(args, "grid")
    tol = option(args, "tol")
    if K < 1:
        raise InputError(f"truncation must be >= 1, got {K}")
    xis = xi_grid(G)
    levels = _levels(spec, args.k_max)

    columns = []
    with GridPool(args.threads) as pool:
        for k in levels:
            s = spectrum_of(spec) if spec.decomposition is Decomposition.TYPE_I else lambda_k(spec, k)
            columns.append(q_grid(spec, s, K, xis, map_fn=pool.map))
            logger.info(f"Q_{k} done over {G} points")

    header = ["xi"]
    for k in levels:
        header += [f"Q_{k}", f"bound_{k}"]
    rows = []
    for i, xi in enumerate(xis):
        row = [xi]
        for col in columns:
            row += list(col[i])
        rows.append(row)
    write_csv(args.out, header, rows)

    report = RunReport(
        command="qplot",
        inputs={**request.model_dump(), "side": args.side, "levels": levels, "trunc": K, "grid": G},
        outputs={"csv": args.out, "rows": len(rows)},
    )

    upper = all(q <= 1 + b + tol for col in columns for q, b in col)
    report.results.append(check("q_upper", upper, detail="Q_k <= 1 + bound"))

    monotone = all(
        hi[0] >= lo[0] - 2 * max(lo[1], hi[1]) - tol
        for prev, nxt in zip(columns, columns[1:])
        for lo, hi in zip(prev, nxt)
    )
    report.results.append(check("q_monotone", monotone, detail="Q_{k+1} >= Q_k - 2 bound"))

    if spec.decomposition is Decomposition.TYPE_I:
        exact = all(abs(1 - q) <= b + tol for q, b in columns[0])
        report.results.append(check("q_exact", exact, detail="Type I: Q = 1 within bound"))
    else:
        gap = max(1 - q for q, _ in columns[-1])
        report.results.append(check("q_gap", True, value=gap, bound=max(b for _, b in columns[-1]),
                                    detail=f"max 1 - Q_{levels[-1]}"))
    return report.finalize()
