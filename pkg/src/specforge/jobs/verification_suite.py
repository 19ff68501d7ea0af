"""
Verification Suite

Runs every certificate for one complementary pair and collects the results:
exact factor chain, structural and numeric Gram checks, zero-set
partition, tiling of Z, Q over a frequency grid and the transform identity.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional
import logging

import numpy as np

from specforge.core.config import settings
from specforge.core.errors import InputError, SpecforgeError
from specforge.schemas.report import CheckResult
from specforge.services.grid_pool import GridPool
from specforge.tools.fourier import check_zero_partition, sinc_identity_residual
from specforge.tools.ladder import Decomposition, FactorSpec, Ladder, Side, approximant, verify_pair
from specforge.tools.spectra import (
    Spectrum,
    gram_check_numeric,
    gram_check_structural,
    q_grid,
    spectrum_of,
    tiling_check,
    type2_tiling_sets,
    xi_grid,
)

logger = logging.getLogger(__name__)

# Transform identity is sampled on the Q grid stretched to [-10, 10]
IDENTITY_SPAN = 20.0


def exact_extent_length(spec: FactorSpec) -> int:
    """Number of leading ladder entries that exact constructions materialize"""
    if spec.decomposition is Decomposition.TYPE_I:
        return len(spec.ladder)
    return min(len(spec.ladder), 2 * spec.k)


def exact_extent(spec: FactorSpec) -> int:
    return spec.ladder.prefix(exact_extent_length(spec))


def require_within_cap(spec: FactorSpec, cap: Optional[int] = None):
    cap = settings.max_n if cap is None else cap
    extent = exact_extent(spec)
    if extent > cap:
        raise InputError(
            f"exact part of the ladder has {extent} grid points, above the cap {cap}; "
            f"lower the level or raise SPECFORGE_MAX_N"
        )
    if any(e > settings.max_entry for e in spec.ladder.entries):
        raise InputError(f"ladder entry above {settings.max_entry}")


@dataclass
class SuiteOptions:
    window: int = settings.window
    grid: int = settings.grid
    trunc: int = settings.trunc
    tol: float = settings.tol


class VerificationSuite:
    """
    Runs the checks of one pair

    - a failing check is recorded, never raised
    - malformed input (InputError) propagates to the caller
    - results keep a fixed order so reports are reproducible
    """

    def __init__(self, pool: GridPool, options: Optional[SuiteOptions] = None):
        self.pool = pool
        self.options = options or SuiteOptions()
        self.results: List[CheckResult] = []

    def _run(self, name: str, check: Callable[[], CheckResult]):
        try:
            result = check()
        except InputError:
            raise
        except SpecforgeError as e:
            result = CheckResult(name=name, passed=False, detail=str(e))
        result.name = name
        self.results.append(result)
        if result.passed:
            logger.info(f"✅ {name}")
        else:
            logger.warning(f"❌ {name}: {result.detail or 'failed'}")

    def run(
        self,
        odd: FactorSpec,
        even: FactorSpec,
        overrides: Optional[Dict[Side, Spectrum]] = None,
    ) -> List[CheckResult]:
        """All checks for the pair (odd side, even side)"""
        overrides = overrides or {}
        opts = self.options
        self.results = []
        for spec in (odd, even):
            require_within_cap(spec)

        logger.info(f"🔍 Running verification suite on ladder {odd.ladder.entries} (Type {odd.decomposition.value})")

        exact_ladder = Ladder(odd.ladder.entries[:exact_extent_length(odd)])
        self._run("factor_chain", lambda: CheckResult(name="", passed=verify_pair(exact_ladder)))

        spectra = {
            spec.side: overrides[spec.side] if spec.side in overrides else spectrum_of(spec)
            for spec in (odd, even)
        }
        for spec in (odd, even):
            s = spectra[spec.side]
            finite = Spectrum(s.base, None, s.dim)
            self._run(
                f"gram_structural[{spec.side.value}]",
                lambda spec=spec, finite=finite: CheckResult(
                    name="", passed=gram_check_structural(spec, spec.k, finite)
                ),
            )
            self._run(
                f"gram_numeric[{spec.side.value}]",
                lambda spec=spec, finite=finite: CheckResult(
                    name="", passed=gram_check_numeric(approximant(spec, spec.k), finite, opts.tol)
                ),
            )

        self._run("zero_partition", lambda: self._zero_partition(odd, even))
        self._run("tiling", lambda: self._tiling(odd, even, spectra, overrides))

        xis = xi_grid(opts.grid)
        for spec in (odd, even):
            self._run(f"q_grid[{spec.side.value}]", lambda spec=spec: self._q_grid(spec, spectra[spec.side], xis))

        self._run("transform_identity", lambda: self._identity(odd, even, xis * IDENTITY_SPAN))

        failed = [r.name for r in self.results if not r.passed]
        if failed:
            logger.info(f"Verification finished with {len(failed)} failed checks: {', '.join(failed)}")
        else:
            logger.info(f"✅ All {len(self.results)} checks passed")
        return self.results

    def _zero_partition(self, odd: FactorSpec, even: FactorSpec) -> CheckResult:
        W = self.options.window
        if W == 0:
            logger.warning("window 0: zero partition passes vacuously")
        ok = check_zero_partition(odd, even, W, K=self.options.trunc)
        return CheckResult(name="", passed=ok, detail=f"1 <= |m| <= {W}")

    def _tiling(
        self,
        odd: FactorSpec,
        even: FactorSpec,
        spectra: Dict[Side, Spectrum],
        overrides: Dict[Side, Spectrum],
    ) -> CheckResult:
        W = self.options.window
        if odd.decomposition is Decomposition.TYPE_I:
            ok = tiling_check(spectra[Side.ODD], spectra[Side.EVEN], W)
            return CheckResult(name="", passed=ok, detail="residue cover of Z")
        sa, sb, n = type2_tiling_sets(odd.ladder, W)
        sa = overrides.get(Side.ODD, sa)
        sb = overrides.get(Side.EVEN, sb)
        ok = tiling_check(sa, sb, W, negate_b=True)
        detail = f"odd digits + (-even digits) at level {n}"
        supplied = [side.value for side in (Side.ODD, Side.EVEN) if side in overrides]
        if supplied:
            detail += f", supplied spectra for {', '.join(supplied)}"
        return CheckResult(name="", passed=ok, detail=detail)

    def _q_grid(self, spec: FactorSpec, s: Spectrum, xis: np.ndarray) -> CheckResult:
        rows = q_grid(spec, s, self.options.trunc, xis, map_fn=self.pool.map)
        tol = self.options.tol
        exact = spec.decomposition is Decomposition.TYPE_I
        worst = 0.0
        ok = True
        for value, bound in rows:
            worst = max(worst, abs(1 - value))
            if value > 1 + bound + tol or (exact and value < 1 - bound - tol):
                ok = False
        return CheckResult(
            name="",
            passed=ok,
            value=worst,
            bound=max(b for _, b in rows),
            detail="max |1 - Q| over the grid",
        )

    def _identity(self, odd: FactorSpec, even: FactorSpec, xis: np.ndarray) -> CheckResult:
        K = self.options.trunc
        rows = self.pool.map(lambda xi: sinc_identity_residual(odd, even, K, float(xi)), xis)
        ok = all(res <= bound + self.options.tol for res, bound in rows)
        return CheckResult(
            name="",
            passed=ok,
            value=max(r for r, _ in rows),
            bound=max(b for _, b in rows),
            detail="max |mu^ nu^ - L^| on [-10, 10]",
        )
