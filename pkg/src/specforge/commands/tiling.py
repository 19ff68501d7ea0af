"""
Tiling Commands

tile-extract: offsets a_k with Q the disjoint union of Omega + a_k.
"""

import argparse
import logging

from specforge.commands.common import check
from specforge.core.errors import TilingError
from specforge.schemas.report import RunReport
from specforge.schemas.tiling import MaskSchema, TranslateSystemSchema
from specforge.tools.tiling import assemble, extract_translates

logger = logging.getLogger(__name__)


def register(subparsers, parents):
    p = subparsers.add_parser("tile-extract", parents=parents, help="translates of Omega tiling Q")
    p.add_argument("--omega", required=True, help="cell bits of Omega, e.g. 101")
    p.add_argument("--q", required=True, help="cell bits of Q, e.g. 1111")
    p.add_argument("--m", type=int, default=1, help="grid resolution (cell j is [j/m, (j+1)/m))")
    p.add_argument("--q-m", type=int, default=None, help="resolution of Q if it differs")
    p.set_defaults(handler=tile_extract)


def tile_extract(args: argparse.Namespace) -> RunReport:
    omega_in = MaskSchema(m=args.m, cells=args.omega)
    q_in = MaskSchema(m=args.q_m or args.m, cells=args.q)
    omega, q = omega_in.to_domain(), q_in.to_domain()

    report = RunReport(command="tile-extract", inputs={"omega": omega_in.model_dump(), "q": q_in.model_dump()})
    try:
        system = extract_translates(omega, q)
    except TilingError as e:
        logger.warning(f"No tiling: {e}")
        report.results.append(check("extraction", False, detail=str(e)))
        return report.finalize()

    report.outputs = TranslateSystemSchema.from_domain(system).model_dump()
    report.results.append(check("extraction", True, value=float(system.count), detail="number of translates"))
    rebuilt = assemble(omega, system)
    report.results.append(check("reassembly", rebuilt.cell_set() == q.cell_set(), detail="union of Omega + a_k equals Q"))
    return report.finalize()
