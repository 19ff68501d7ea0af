"""
Spectra Tool

Spectra of ladder factors built from digit sets

    A_n = N_1 ... N_{n-1} * {0, ..., N_n - 1}

plus the checks that certify them: structural Gram checks on exact integer
differences, numeric Gram matrices, the Q function and tilings of Z (or Z^d).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np

from specforge.core.errors import InputError, LadderError, SpectrumError
from specforge.tools.fourier import (
    ft_factor,
    ft_truncated_product,
    in_zero_set,
    roundoff_allowance,
)
from specforge.tools.ladder import Decomposition, FactorSpec, Ladder, approximant
from specforge.tools.measures import DiscreteMeasure

logger = logging.getLogger(__name__)

Point = Union[int, Tuple[int, ...]]


def _as_tuple(p: Point) -> Tuple[int, ...]:
    return p if isinstance(p, tuple) else (p,)


@dataclass(frozen=True)
class Spectrum:
    """
    Finite integer set, or base + period * Z (per axis) when `period` is set.
    One-dimensional elements are plain ints (1-tuples are unwrapped),
    d-dimensional ones int tuples.
    """

    base: Tuple[Point, ...]
    period: Optional[int] = None
    dim: int = 1

    def __post_init__(self):
        base = self.base
        if self.dim == 1:
            base = (p[0] if isinstance(p, tuple) and len(p) == 1 else p for p in base)
        base = tuple(sorted(base))
        if not base:
            raise SpectrumError("spectrum base must not be empty")
        if len(set(base)) != len(base):
            raise SpectrumError("spectrum base elements must be distinct")
        if any(len(_as_tuple(p)) != self.dim for p in base):
            raise SpectrumError(f"spectrum elements must have dimension {self.dim}")
        if self.period is not None:
            if self.period < 1:
                raise SpectrumError(f"period must be positive, got {self.period}")
            residues = {tuple(c % self.period for c in _as_tuple(p)) for p in base}
            if len(residues) != len(base):
                raise SpectrumError(f"base elements share residues mod {self.period}")
        object.__setattr__(self, "base", base)

    @property
    def finite(self) -> bool:
        return self.period is None

    def __len__(self) -> int:
        if not self.finite:
            raise SpectrumError("periodic spectrum has no finite size")
        return len(self.base)

    def points(self) -> List[Tuple[int, ...]]:
        return [_as_tuple(p) for p in self.base]


@dataclass(frozen=True)
class DigitSet:
    n: int
    values: Tuple[int, ...]


def digit_set(ladder: Ladder, n: int) -> DigitSet:
    if not 1 <= n <= len(ladder):
        raise LadderError(f"digit set index {n} out of range for ladder of length {len(ladder)}")
    step = ladder.prefix(n - 1)
    return DigitSet(n, tuple(step * j for j in range(ladder.entry(n))))


def direct_sum(sets: Iterable[Sequence[int]]) -> Tuple[int, ...]:
    """Sumset of integer sets; every sum must be unique"""
    acc = [0]
    for s in sets:
        sums = [a + b for a in acc for b in s]
        if len(set(sums)) != len(sums):
            raise SpectrumError(f"sum with {sorted(s)} is not direct")
        acc = sums
    return tuple(sorted(acc))


def lambda_k(spec: FactorSpec, k: int) -> Spectrum:
    """Direct sum of the digit sets on the spec's side, first k of them"""
    if k < 0:
        raise LadderError(f"level must be >= 0, got {k}")
    return Spectrum(direct_sum(digit_set(spec.ladder, n).values for n in spec.indices(k)))


def type1_spectrum_tail_side(spec: FactorSpec) -> Spectrum:
    """Lambda_k + N_1 ... N_2k * Z for the Type I factor carrying the Lebesgue tail"""
    if spec.decomposition is not Decomposition.TYPE_I or not spec.carries_tail:
        raise SpectrumError("periodic spectrum exists only on the Type I tail side")
    return Spectrum(lambda_k(spec, spec.k).base, period=spec.ladder.total())


def spectrum_of(spec: FactorSpec) -> Spectrum:
    """The spectrum of the factor at its own level"""
    if spec.carries_tail:
        return type1_spectrum_tail_side(spec)
    return lambda_k(spec, spec.k)


def gram_check_structural(spec: FactorSpec, k: int, s: Spectrum) -> bool:
    """
    Orthogonality from zero sets, completeness from counting.

    Every non-zero difference must be a zero of one of the first k side
    factors, and |s| must equal the number of atoms of the approximant.
    """
    if not s.finite or s.dim != 1:
        logger.error("structural Gram check needs a finite 1-dimensional spectrum")
        return False

    indices = spec.indices(k)
    atoms = len(approximant(spec, k))
    if len(s) != atoms:
        logger.error(f"{len(s)} frequencies for {atoms} atoms")
        return False

    base = s.base
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            d = b - a
            if not any(in_zero_set(spec.ladder, n, d) for n in indices):
                logger.error(f"difference {d} is not a zero of any side factor")
                return False
    return True


def gram_check_numeric(m: DiscreteMeasure, s: Spectrum, eps: float) -> bool:
    """max |<e_lambda, e_lambda'> - delta| <= eps with exact phases reduced mod 1"""
    if not s.finite:
        logger.error("numeric Gram check needs a finite spectrum")
        return False
    if s.dim != m.dim:
        raise SpectrumError(f"spectrum dimension {s.dim} does not match measure dimension {m.dim}")

    freqs = s.points()
    phases = np.empty((len(freqs), len(m)), dtype=float)
    for i, lam in enumerate(freqs):
        for j, (pos, _) in enumerate(m.atoms):
            t = sum((Fraction(l) * x for l, x in zip(lam, pos)), Fraction(0))
            phases[i, j] = float(t - math.floor(t))

    weights = np.array([float(w) for _, w in m.atoms])
    exps = np.exp(2j * np.pi * phases)
    gram = (exps * weights) @ exps.conj().T
    err = float(np.max(np.abs(gram - np.eye(len(freqs)))))
    if err > eps:
        logger.error(f"Gram matrix deviates from identity by {err:.3e}")
        return False
    return True


def _discrete_part(spec: FactorSpec, xi: float) -> complex:
    value = 1 + 0j
    for n in spec.indices(spec.k):
        value *= ft_factor(spec.ladder, n, xi)
    return value


def q_function(spec: FactorSpec, s: Spectrum, K: int, xi: float) -> Tuple[float, float]:
    """
    Q(xi) = sum over lambda in s of |mu^(xi + lambda)|^2, with a bound.

    A periodic spectrum is accepted only for the Type I tail side; the sum
    over the lattice of |L^|^2 is then exactly 1 and only the discrete part
    remains.
    """
    if s.dim != 1:
        raise SpectrumError("Q is evaluated on 1-dimensional spectra; multiply per-axis values")

    if not s.finite:
        if not spec.carries_tail or s.period != spec.ladder.total():
            raise SpectrumError("periodic spectrum only supported for the Type I tail side")
        value = 0.0
        bound = 0.0
        for lam in s.base:
            value += abs(_discrete_part(spec, xi + lam)) ** 2
            bound += roundoff_allowance(spec.k, xi + lam)
        return value, bound

    value = 0.0
    bound = 0.0
    for lam in s.base:
        v, b = ft_truncated_product(spec, K, xi + lam)
        sq = abs(v) ** 2
        value += sq
        bound += sq * ((1 + b) ** 2 - 1) + roundoff_allowance(K, xi + lam)
    return value, bound


def xi_grid(G: int) -> np.ndarray:
    """G equispaced points strictly inside (-1/2, 1/2): -1/2 + (i + 1) / (G + 1)"""
    if G < 1:
        raise InputError(f"grid size must be >= 1, got {G}")
    return np.linspace(-0.5, 0.5, G + 2)[1:-1]


def q_grid(
    spec: FactorSpec,
    s: Spectrum,
    K: int,
    xis: Sequence[float],
    map_fn: Callable = map,
) -> List[Tuple[float, float]]:
    """Q over a frequency grid; `map_fn` may fan out to a pool but must keep order"""
    return list(map_fn(lambda xi: q_function(spec, s, K, float(xi)), xis))


def tail_product_floor(spec: FactorSpec, k: int, K: int, xis: Sequence[float]) -> float:
    """
    min over xi in xis and lambda in Lambda_k of |prod_{k < j <= K} nu_j^(xi + lambda)|^2,
    j running over the side's factors.
    """
    used = min(K, spec.available)
    if k > used:
        raise LadderError(f"level {k} exceeds the {used} factors in use")
    tail = spec.side.indices(used)[k:]
    floor = math.inf
    for lam in lambda_k(spec, k).base:
        for xi in xis:
            value = 1.0
            for n in tail:
                value *= abs(ft_factor(spec.ladder, n, float(xi) + lam)) ** 2
            floor = min(floor, value)
    return floor


def tiling_check(sa: Spectrum, sb: Spectrum, W: int, negate_b: bool = False) -> bool:
    """
    Every point of [-W, W]^d has exactly one representation a + b
    (a + (-b) when negate_b). A periodic side turns the count into a
    residue count modulo its period.
    """
    if sa.dim != sb.dim:
        raise SpectrumError(f"cannot tile with spectra of dimension {sa.dim} and {sb.dim}")
    if not sa.finite and not sb.finite:
        logger.error("tiling check needs at least one finite spectrum")
        return False
    if W == 0:
        logger.warning("empty window: tiling check passes vacuously")

    sign = -1 if negate_b else 1
    a_pts = sa.points()
    b_pts = [tuple(sign * c for c in p) for p in sb.points()]
    period = sa.period or sb.period

    counts: Counter = Counter()
    for a in a_pts:
        for b in b_pts:
            z = tuple(x + y for x, y in zip(a, b))
            counts[tuple(c % period for c in z) if period else z] += 1

    for z in cartesian(range(-W, W + 1), repeat=sa.dim):
        key = tuple(c % period for c in z) if period else z
        if counts[key] != 1:
            logger.error(f"{z} has {counts[key]} representations")
            return False
    return True


def exhaustion_interval(ladder: Ladder, n: int) -> Tuple[int, int]:
    """
    [lo, hi] = A_1 + (-A_2) + A_3 + ... + (+-A_n), a direct sum that is
    exactly the integer interval.
    """
    if not 0 <= n <= len(ladder):
        raise LadderError(f"exhaustion level {n} out of range for ladder of length {len(ladder)}")
    lo = hi = 0
    for j in range(1, n + 1):
        reach = (ladder.entry(j) - 1) * ladder.prefix(j - 1)
        if j % 2:
            hi += reach
        else:
            lo -= reach
    return lo, hi


def type2_tiling_sets(ladder: Ladder, W: int) -> Tuple[Spectrum, Spectrum, int]:
    """
    Odd and even digit sums at the smallest level n whose exhaustion
    interval covers [-W, W]; the even set is to be negated.
    """
    for n in range(len(ladder) + 1):
        lo, hi = exhaustion_interval(ladder, n)
        if lo <= -W and hi >= W:
            odd = direct_sum(digit_set(ladder, j).values for j in range(1, n + 1, 2))
            even = direct_sum(digit_set(ladder, j).values for j in range(2, n + 1, 2))
            logger.debug(f"window {W} covered at level {n} by [{lo}, {hi}]")
            return Spectrum(odd), Spectrum(even), n
    raise SpectrumError(f"ladder of length {len(ladder)} is too short to cover window {W}")


def product_spectrum(parts: Sequence[Spectrum]) -> Spectrum:
    """Cartesian product of 1-dimensional spectra"""
    if not parts:
        raise SpectrumError("product of an empty spectrum list")
    if any(p.dim != 1 for p in parts):
        raise SpectrumError("product spectrum needs 1-dimensional parts")
    periods = {p.period for p in parts}
    if len(periods) > 1:
        raise SpectrumError(f"parts have mixed periods {sorted(periods, key=str)}")
    base = tuple(cartesian(*(p.base for p in parts)))
    return Spectrum(base, periods.pop(), len(parts))
