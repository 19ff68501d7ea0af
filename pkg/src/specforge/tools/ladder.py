"""
Ladder Tool

Ladders N = (N_1, N_2, ...) and the complementary pairs they generate.
Each ladder entry N_k gives the discrete factor

    nu_k = (1/N_k) * sum_{j < N_k} delta_{j / (N_1 ... N_k)}

and nu_1 * nu_2 * ... * nu_L is the uniform measure on {j / (N_1 ... N_L)}.
Splitting the chain by parity gives the Type I (finite, one side carries a
Lebesgue tail) and Type II (both sides infinite) decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from specforge.core.errors import LadderError
from specforge.tools.measures import (
    DiscreteMeasure,
    UniformSegment,
    convolve_all,
    uniform,
)

logger = logging.getLogger(__name__)


class Decomposition(str, Enum):
    TYPE_I = "I"
    TYPE_II = "II"


class Side(str, Enum):
    """Which parity of nu_k a factor collects"""

    ODD = "odd"
    EVEN = "even"

    def other(self) -> "Side":
        return Side.EVEN if self is Side.ODD else Side.ODD

    def indices(self, k: int) -> List[int]:
        """Ladder indices of the first k factors on this side (1-based)"""
        offset = 1 if self is Side.ODD else 2
        return [2 * j + offset for j in range(k)]

    def available(self, length: int) -> int:
        """How many factors of this side a ladder of the given length holds"""
        return (length + 1) // 2 if self is Side.ODD else length // 2

    @classmethod
    def of_index(cls, n: int) -> "Side":
        return cls.ODD if n % 2 == 1 else cls.EVEN


@dataclass(frozen=True)
class Ladder:
    """Finite sequence of integers >= 2; the empty ladder is the degenerate pair"""

    entries: Tuple[int, ...] = ()
    prefixes: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        bad = [e for e in entries if e < 2]
        if bad:
            raise LadderError(f"ladder entries must be >= 2, got {bad}")
        object.__setattr__(self, "entries", entries)

        prefixes = [1]
        for e in entries:
            prefixes.append(prefixes[-1] * e)
        object.__setattr__(self, "prefixes", tuple(prefixes))

    @classmethod
    def from_pattern(cls, pattern: Sequence[int], repeat: int = 1) -> "Ladder":
        """Pattern repeated `repeat` times, e.g. (2,) * 40 for the 1/4-Cantor pair"""
        if repeat < 1:
            raise LadderError(f"repeat must be >= 1, got {repeat}")
        return cls(tuple(pattern) * repeat)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, k: int) -> int:
        """N_k with 1-based k"""
        if not 1 <= k <= len(self.entries):
            raise LadderError(f"index {k} out of range for ladder of length {len(self.entries)}")
        return self.entries[k - 1]

    def prefix(self, n: int) -> int:
        """N_1 ... N_n, with the empty product N_0 = 1"""
        if not 0 <= n <= len(self.entries):
            raise LadderError(f"prefix length {n} out of range for ladder of length {len(self.entries)}")
        return self.prefixes[n]

    def total(self) -> int:
        return self.prefix(len(self.entries))


@dataclass(frozen=True)
class FactorSpec:
    """
    One factor of a complementary pair

    - decomposition I: ladder of even length 2k, `tail_on` names the side that
      also carries L_[0, 1/(N_1...N_2k)]; level is k
    - decomposition II: finite truncation of the infinite parity split; `level`
      is the truncation k (None means every factor the ladder holds)
    """

    ladder: Ladder
    decomposition: Decomposition
    side: Side
    level: Optional[int] = None
    tail_on: Optional[Side] = None

    def __post_init__(self):
        length = len(self.ladder)

        if self.decomposition is Decomposition.TYPE_I:
            if length % 2:
                raise LadderError(f"Type I needs an even ladder length, got {length}")
            if self.tail_on is None:
                raise LadderError("Type I needs a tail side")
            if self.level is None:
                object.__setattr__(self, "level", length // 2)
            elif self.level != length // 2:
                raise LadderError(f"Type I level must be {length // 2}, got {self.level}")
        else:
            if self.tail_on is not None:
                raise LadderError("only Type I factors carry a Lebesgue tail")
            if self.level is not None and not 0 <= self.level <= (length + 1) // 2:
                raise LadderError(f"Type II level {self.level} exceeds ladder capacity {(length + 1) // 2}")

    @property
    def available(self) -> int:
        return self.side.available(len(self.ladder))

    @property
    def k(self) -> int:
        return self.level if self.level is not None else self.available

    @property
    def carries_tail(self) -> bool:
        return self.decomposition is Decomposition.TYPE_I and self.tail_on is self.side

    def tail(self) -> Optional[UniformSegment]:
        if not self.carries_tail:
            return None
        return UniformSegment(Fraction(1, self.ladder.total()))

    def indices(self, k: Optional[int] = None) -> List[int]:
        k = self.k if k is None else k
        if k > self.available:
            raise LadderError(
                f"{self.side.value} side holds {self.available} factors, level {k} requested"
            )
        return self.side.indices(k)

    def partner(self) -> "FactorSpec":
        return FactorSpec(self.ladder, self.decomposition, self.side.other(), self.level, self.tail_on)


def complementary_pair(
    ladder: Ladder,
    decomposition: Decomposition,
    tail_on: Optional[Side] = None,
    level: Optional[int] = None,
) -> Tuple[FactorSpec, FactorSpec]:
    """(odd side, even side) specs of one ladder"""
    odd = FactorSpec(ladder, decomposition, Side.ODD, level, tail_on)
    return odd, odd.partner()


def is_complementary(a: FactorSpec, b: FactorSpec) -> bool:
    """Same ladder and decomposition, opposite sides"""
    return (
        a.ladder == b.ladder
        and a.decomposition is b.decomposition
        and a.tail_on == b.tail_on
        and a.side is b.side.other()
    )


def nu_factor(ladder: Ladder, k: int) -> DiscreteMeasure:
    """(1/N_k) * sum_{j < N_k} delta_{j / (N_1 ... N_k)}"""
    n_k = ladder.entry(k)
    p_k = ladder.prefix(k)
    return uniform(Fraction(j, p_k) for j in range(n_k))


def approximant(spec: FactorSpec, k: int) -> DiscreteMeasure:
    """Convolution of the first k factors on the spec's side (k = 0 gives delta_0)"""
    if k < 0:
        raise LadderError(f"level must be >= 0, got {k}")
    return convolve_all(nu_factor(spec.ladder, n) for n in spec.indices(k))


def factor_measure(spec: FactorSpec) -> Tuple[DiscreteMeasure, Optional[UniformSegment]]:
    """Discrete part at the spec's level, plus the Lebesgue tail if it carries one"""
    return approximant(spec, spec.k), spec.tail()


def verify_pair(ladder: Ladder) -> bool:
    """
    Exact check that nu_1 * ... * nu_L is uniform on {j / (N_1 ... N_L)}

    Every atom of the chain weighs 1/P with P = N_1 ... N_L, so the check
    reduces to integer multiplicities on the grid {j/P}: each j must be hit
    exactly once.
    """
    p = ladder.total()
    positions = np.zeros(1, dtype=np.int64)
    for k in range(1, len(ladder) + 1):
        step = p // ladder.prefix(k)
        positions = np.add.outer(positions, step * np.arange(ladder.entry(k), dtype=np.int64)).ravel()
    ok = bool(np.array_equal(np.bincount(positions, minlength=p), np.ones(p, dtype=np.int64)))
    if not ok:
        logger.error(f"Factor chain of {ladder.entries} is not uniform")
    return ok


@dataclass(frozen=True)
class CanonicalForm:
    """Strictly alternating ladder plus, for each input label, the spec it became"""

    ladder: Ladder
    labels: Tuple[Side, ...]
    factors: Dict[Side, FactorSpec]


def assigned_measures(ladder: Ladder, labels: Sequence[Side]) -> Dict[Side, DiscreteMeasure]:
    """Convolve the nu_k assigned to each label"""
    if len(labels) != len(ladder):
        raise LadderError(f"{len(labels)} labels for a ladder of length {len(ladder)}")
    return {
        side: convolve_all(
            nu_factor(ladder, k) for k, lab in enumerate(labels, start=1) if lab is side
        )
        for side in Side
    }


def canonicalize(ladder: Ladder, labels: Sequence[Side]) -> CanonicalForm:
    """
    Merge consecutive same-side factors

    nu_k * nu_{k+1} is the single factor with entry N_k N_{k+1}, so any
    assignment collapses into a strictly alternating one.
    """
    if len(labels) != len(ladder):
        raise LadderError(f"{len(labels)} labels for a ladder of length {len(ladder)}")

    entries: List[int] = []
    merged: List[Side] = []
    for n, lab in zip(ladder.entries, labels):
        lab = Side(lab)
        if merged and merged[-1] is lab:
            entries[-1] *= n
        else:
            entries.append(n)
            merged.append(lab)

    canonical = Ladder(tuple(entries))
    first = merged[0] if merged else Side.ODD
    # The label holding nu_1 becomes the odd side of the canonical ladder
    factors = {
        first: FactorSpec(canonical, Decomposition.TYPE_II, Side.ODD),
        first.other(): FactorSpec(canonical, Decomposition.TYPE_II, Side.EVEN),
    }

    if len(entries) < len(ladder):
        logger.debug(f"Merged {ladder.entries} into {canonical.entries}")

    return CanonicalForm(canonical, tuple(merged), factors)


def alternating_labels(length: int, first: Side = Side.ODD) -> Tuple[Side, ...]:
    return tuple(first if i % 2 == 0 else first.other() for i in range(length))


def ladders_up_to(limit: int, entries: Iterable[int] = (2, 3, 4, 5)) -> List[Ladder]:
    """Every ladder over `entries` whose product is <= limit, in depth-first order"""
    choices = sorted(set(entries))
    found: List[Ladder] = []

    def extend(prefix: Tuple[int, ...], prod: int):
        found.append(Ladder(prefix))
        for e in choices:
            if prod * e <= limit:
                extend(prefix + (e,), prod * e)

    extend((), 1)
    return found
