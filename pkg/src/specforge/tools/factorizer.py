"""
Factorizer Tool

Recovers ladders from complementary data:
- discrete measure pairs p, q with p * q uniform on {j/n}
- integer set pairs A + B = {0, ..., n-1} with unique sums

Factorization peels uniform factors off exact weight vectors: at every
stage one side splits into N identical consecutive blocks, that block
structure is the coarsest ladder factor, and the rest is rescaled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from specforge.core.config import settings
from specforge.core.errors import FactorizationError, InputError
from specforge.tools.fourier import ft_discrete
from specforge.tools.ladder import Ladder, nu_factor
from specforge.tools.measures import (
    DiscreteMeasure,
    convolve,
    convolve_all,
    is_uniform_on_grid,
    support,
    uniform,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SetPair:
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    n: int

    def __post_init__(self):
        for name in ("a", "b"):
            values = tuple(sorted(int(v) for v in getattr(self, name)))
            if len(set(values)) != len(values):
                raise FactorizationError(f"set {name.upper()} has repeated elements")
            if values and values[0] < 0:
                raise FactorizationError(f"set {name.upper()} has negative elements")
            object.__setattr__(self, name, values)
        if self.n < 1:
            raise FactorizationError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class LadderWithSides:
    """
    Recovered ladder in coarse-first order, the input label each entry
    went to, and `first_side`: the label holding the finest factor.
    """

    ladder: Ladder
    labels: Tuple[str, ...]
    sides: Tuple[str, str]

    @property
    def first_side(self) -> Optional[str]:
        return self.labels[-1] if self.labels else None

    def digit_order(self) -> Tuple[int, ...]:
        """Entries finest first: A = E_M1 + M1 M2 E_M3 + ... when A is the first side"""
        return tuple(reversed(self.ladder.entries))


def _weight_vector(m: DiscreteMeasure, n: int, label: str) -> List[Fraction]:
    vec = [Fraction(0)] * n
    for x, w in m.scalar_atoms():
        j = x * n
        if j.denominator != 1 or not 0 <= j < n:
            raise FactorizationError(f"{label} has an atom at {x}, off the grid {{j/{n}}}")
        vec[int(j)] = w
    return vec


def _block_period(vec: List[Fraction]) -> int:
    """Largest N >= 2 such that vec is N copies of one block; 1 if none"""
    g = len(vec)
    for n in range(g, 1, -1):
        if g % n:
            continue
        size = g // n
        first = vec[:size]
        if all(vec[i * size:(i + 1) * size] == first for i in range(1, n)):
            return n
    return 1


def factor_uniform_pair(
    p: DiscreteMeasure,
    q: DiscreteMeasure,
    labels: Tuple[str, str] = ("p", "q"),
) -> LadderWithSides:
    """Peel the ladder of a complementary pair of grid measures"""
    conv = convolve(p, q)
    n = len(conv)
    if not is_uniform_on_grid(conv, n):
        raise FactorizationError("convolution is not uniform on {j/n}: not a complementary pair")

    vecs = {labels[0]: _weight_vector(p, n, labels[0]), labels[1]: _weight_vector(q, n, labels[1])}
    entries: List[int] = []
    assigned: List[str] = []
    g = n

    while g > 1:
        periods = {lab: _block_period(vec) for lab, vec in vecs.items()}
        best = max(periods.values())
        winners = [lab for lab, per in periods.items() if per == best]
        if best < 2 or len(winners) != 1:
            raise FactorizationError(f"no unique block-periodic side at grid size {g}")

        lab = winners[0]
        other = labels[1] if lab == labels[0] else labels[0]
        size = g // best

        block = [w * best for w in vecs[lab][:size]]
        nonzero = {w for w in block if w}
        if len(nonzero) != 1:
            raise FactorizationError(f"peeled remainder of {lab} is not uniform on its support")
        if any(vecs[other][size:]):
            raise FactorizationError(f"{other} reaches past the first block of {lab}")

        vecs[lab] = block
        vecs[other] = vecs[other][:size]
        entries.append(best)
        assigned.append(lab)
        g = size
        logger.debug(f"peeled N={best} from {lab}, grid now {g}")

    if any(vecs[lab] != [Fraction(1)] for lab in labels):
        raise FactorizationError("peeling did not end at the point mass")

    return LadderWithSides(Ladder(tuple(entries)), tuple(assigned), labels)


def expand_ladder(result: LadderWithSides) -> Dict[str, DiscreteMeasure]:
    """The measure each label receives: convolution of its assigned nu_k"""
    return {
        side: convolve_all(
            nu_factor(result.ladder, k) for k, lab in enumerate(result.labels, start=1) if lab == side
        )
        for side in result.sides
    }


def expand_sets(result: LadderWithSides) -> Dict[str, Tuple[int, ...]]:
    """Integer sets (atoms times n) each label receives"""
    n = result.ladder.total()
    return {
        side: tuple(int(x * n) for x, _ in m.scalar_atoms())
        for side, m in expand_ladder(result).items()
    }


def factor_sets(sp: SetPair) -> LadderWithSides:
    """Ladder of a pair A + B = {0, ..., n-1}"""
    if not sp.a or sp.a[0] != 0 or not sp.b or sp.b[0] != 0:
        raise FactorizationError("both sets must contain 0")

    sums = [x + y for x in sp.a for y in sp.b]
    if len(set(sums)) != len(sums):
        raise FactorizationError("sums are not unique")
    if sorted(sums) != list(range(sp.n)):
        raise FactorizationError(f"sums are not exactly {{0, ..., {sp.n - 1}}}")

    p = uniform(Fraction(x, sp.n) for x in sp.a)
    q = uniform(Fraction(y, sp.n) for y in sp.b)
    return factor_uniform_pair(p, q, labels=("A", "B"))


def enumerate_complementary_pairs(n: int, limit: Optional[int] = None) -> List[SetPair]:
    """
    Every A + B = {0, ..., n-1} with 0 in both, by exact cover.

    The smallest uncovered integer can only enter as a new element of A
    (paired with 0 in B) or of B; A is tried first.
    """
    limit = settings.enumerate_limit if limit is None else limit
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if n > limit:
        raise InputError(f"n = {n} exceeds the enumeration limit {limit}")

    found: List[SetPair] = []

    def search(a: List[int], b: List[int], covered: set):
        x = next((i for i in range(n) if i not in covered), None)
        if x is None:
            found.append(SetPair(tuple(a), tuple(b), n))
            return
        for grow, fixed in ((a, b), (b, a)):
            new = {x + y for y in fixed}
            if max(new) >= n or new & covered:
                continue
            grow.append(x)
            search(a, b, covered | new)
            grow.pop()

    search([0], [0], {0})
    logger.debug(f"{len(found)} complementary pairs for n={n}")
    return found


def symmetry_check(p: DiscreteMeasure) -> bool:
    """Weights symmetric about the midpoint of the support"""
    lo, hi = support(p)
    weights = dict(p.scalar_atoms())
    return all(weights.get(lo + hi - x) == w for x, w in weights.items())


def support_bound_check(p: DiscreteMeasure, r: int) -> bool:
    """1/(4r) <= a <= 1/(2r) for the half-width a of the support"""
    if r < 1:
        logger.error(f"smallest positive zero must be >= 1, got {r}")
        return False
    lo, hi = support(p)
    a = (hi - lo) / 2
    return Fraction(1, 4 * r) <= a <= Fraction(1, 2 * r)


def smallest_positive_zero(p: DiscreteMeasure, limit: int, eps: Optional[float] = None) -> Optional[int]:
    """Smallest integer 1 <= r <= limit with |p^(r)| < eps"""
    eps = settings.zero_eps if eps is None else eps
    for r in range(1, limit + 1):
        if abs(ft_discrete(p, float(r))) < eps:
            return r
    return None
