"""
Tiling Tool

Translate extraction for grid-resolved sets (L_Omega * nu = L_Q forces
nu = (1/N) sum delta_{a_k} with Q the disjoint union of Omega + a_k) and
d-dimensional complementary pairs assembled from 1-dimensional ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Tuple, Union
import logging

from specforge.core.errors import InputError, LadderError, TilingError
from specforge.tools.ladder import FactorSpec, approximant, is_complementary
from specforge.tools.measures import (
    DiscreteMeasure,
    convolve,
    is_uniform_on_grid,
    marginal,
    product,
    uniform,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridMask:
    """Cell j stands for [j/m, (j+1)/m)"""

    m: int
    cells: Tuple[bool, ...]

    def __post_init__(self):
        if self.m < 1:
            raise InputError(f"resolution must be >= 1, got {self.m}")
        if not self.cells:
            raise InputError("mask needs at least one cell")
        if not any(self.cells):
            raise InputError("mask has no occupied cell")
        object.__setattr__(self, "cells", tuple(bool(c) for c in self.cells))

    @classmethod
    def from_bits(cls, bits: str, m: int = 1) -> "GridMask":
        if set(bits) - {"0", "1"}:
            raise InputError(f"mask bits must be 0/1, got {bits!r}")
        return cls(m, tuple(c == "1" for c in bits))

    @classmethod
    def from_cells(cls, cells: Sequence[int], m: int = 1) -> "GridMask":
        if min(cells) < 0:
            raise TilingError("cells left of the origin")
        occupied = set(cells)
        return cls(m, tuple(j in occupied for j in range(max(occupied) + 1)))

    def bits(self) -> str:
        return "".join("1" if c else "0" for c in self.cells)

    def cell_set(self) -> FrozenSet[int]:
        return frozenset(j for j, c in enumerate(self.cells) if c)


@dataclass(frozen=True)
class TranslateSystem:
    offsets: Tuple[Fraction, ...]
    m: int

    def __post_init__(self):
        offsets = tuple(sorted(Fraction(a) for a in self.offsets))
        if not offsets:
            raise TilingError("translate system needs at least one offset")
        if any((a * self.m).denominator != 1 for a in offsets):
            raise TilingError(f"offsets must have denominator dividing {self.m}")
        object.__setattr__(self, "offsets", offsets)

    @property
    def count(self) -> int:
        return len(self.offsets)

    def shifts(self) -> List[int]:
        """Offsets in cells"""
        return [int(a * self.m) for a in self.offsets]


def extract_translates(omega: GridMask, q: GridMask) -> TranslateSystem:
    """
    Greedy leftmost-first peeling: the leftmost uncovered cell of Q has to
    start a copy of Omega.
    """
    if omega.m != q.m:
        raise InputError(f"masks have resolutions {omega.m} and {q.m}")

    shape = sorted(omega.cell_set())
    remaining = set(q.cell_set())
    if len(remaining) % len(shape):
        raise TilingError(f"{len(remaining)} cells of Q cannot hold copies of {len(shape)} cells")

    shifts = []
    while remaining:
        start = min(remaining)
        t = start - shape[0]
        copy = {c + t for c in shape}
        if not copy <= remaining:
            raise TilingError(f"no copy of Omega fits at cell {start}")
        remaining -= copy
        shifts.append(t)

    system = TranslateSystem(tuple(Fraction(t, q.m) for t in shifts), q.m)
    logger.debug(f"Q tiled by {system.count} translates of Omega")
    return system


def assemble(omega: GridMask, system: TranslateSystem) -> GridMask:
    """Union of Omega + a_k; translates must be disjoint"""
    if omega.m != system.m:
        raise InputError(f"mask resolution {omega.m} differs from offsets resolution {system.m}")
    cells: List[int] = []
    for t in system.shifts():
        cells.extend(c + t for c in omega.cell_set())
    if len(set(cells)) != len(cells):
        raise TilingError("translates overlap")
    return GridMask.from_cells(cells, omega.m)


def translate_measure(system: TranslateSystem) -> DiscreteMeasure:
    """nu = (1/N) sum delta_{a_k}"""
    return uniform(system.offsets)


def product_pair(
    sigmas: Sequence[FactorSpec],
    taus: Sequence[FactorSpec],
    k: int,
) -> Tuple[DiscreteMeasure, DiscreteMeasure]:
    """Level-k d-dimensional pair: products of the per-axis approximants"""
    if len(sigmas) != len(taus) or not sigmas:
        raise LadderError(f"{len(sigmas)} sigma specs against {len(taus)} tau specs")
    for axis, (s, t) in enumerate(zip(sigmas, taus)):
        if not is_complementary(s, t):
            raise LadderError(f"axis {axis}: specs are not a complementary pair")

    sigma_parts = [approximant(s, k) for s in sigmas]
    tau_parts = [approximant(t, k) for t in taus]
    mu = product(sigma_parts)
    nu = product(tau_parts)

    for axis, (sp, tp) in enumerate(zip(sigma_parts, tau_parts)):
        if marginal(mu, axis) != sp or marginal(nu, axis) != tp:
            raise TilingError(f"axis {axis}: marginal differs from the 1-dimensional factor")
    return mu, nu


def verify_marginal_factorization(
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    n: Union[int, Sequence[int]],
) -> bool:
    """Per axis, the convolution of the marginals is uniform on its grid"""
    if mu.dim != nu.dim:
        raise InputError(f"measures have dimensions {mu.dim} and {nu.dim}")
    if mu.dim < 2:
        raise InputError("marginal factorization needs dimension >= 2")
    grids = [n] * mu.dim if isinstance(n, int) else list(n)
    if len(grids) != mu.dim:
        raise InputError(f"{len(grids)} grid sizes for dimension {mu.dim}")

    for axis, g in enumerate(grids):
        conv = convolve(marginal(mu, axis), marginal(nu, axis))
        if not is_uniform_on_grid(conv, g):
            logger.error(f"axis {axis}: marginal convolution is not uniform on {g} points")
            return False
    return True
