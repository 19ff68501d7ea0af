"""
Atomic Measures

Exact finite atomic probability measures on R^d. Positions and weights are
Fractions; atoms are stored sorted by position so iteration and serialization
are deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from specforge.core.errors import MeasureError


Position = Tuple[Fraction, ...]
Atom = Tuple[Position, Fraction]
RationalLike = Union[int, Fraction, str]


def as_position(pos: Union[RationalLike, Sequence[RationalLike]]) -> Position:
    """Normalize a scalar or a coordinate sequence into a position tuple"""
    if isinstance(pos, (int, Fraction, str)):
        return (Fraction(pos),)
    return tuple(Fraction(c) for c in pos)


@dataclass(frozen=True)
class DiscreteMeasure:
    """
    Finite atomic probability measure

    Invariants (checked on construction):
    - every weight > 0
    - weights sum to exactly 1
    - positions distinct and of length `dim`
    """

    atoms: Tuple[Atom, ...]
    dim: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise MeasureError(f"dimension must be >= 1, got {self.dim}")
        if not self.atoms:
            raise MeasureError("a probability measure needs at least one atom")

        seen = set()
        total = Fraction(0)
        for pos, w in self.atoms:
            if len(pos) != self.dim:
                raise MeasureError(f"atom {pos} does not have dimension {self.dim}")
            if w <= 0:
                raise MeasureError(f"non-positive weight {w} at {pos}")
            if pos in seen:
                raise MeasureError(f"duplicate atom at {pos}")
            seen.add(pos)
            total += w

        if total != 1:
            raise MeasureError(f"total mass is {total}, expected 1")

        ordered = tuple(sorted(self.atoms))
        if ordered != self.atoms:
            object.__setattr__(self, "atoms", ordered)

    @classmethod
    def from_mapping(cls, weights: Mapping, dim: int = 1) -> "DiscreteMeasure":
        """Build from {position: weight}; scalar positions are accepted for dim 1"""
        return cls(tuple((as_position(p), Fraction(w)) for p, w in weights.items()), dim)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def weight_map(self) -> Dict[Position, Fraction]:
        return dict(self.atoms)

    def scalar_atoms(self) -> List[Tuple[Fraction, Fraction]]:
        """(position, weight) pairs of a 1-dimensional measure"""
        self.require_dim(1)
        return [(pos[0], w) for pos, w in self.atoms]

    def positions(self) -> List[Position]:
        return [pos for pos, _ in self.atoms]

    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def require_dim(self, dim: int):
        if self.dim != dim:
            raise MeasureError(f"expected a {dim}-dimensional measure, got dimension {self.dim}")


@dataclass(frozen=True)
class UniformSegment:
    """Normalized Lebesgue measure on [0, length]^dim"""

    length: Fraction
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "length", Fraction(self.length))
        if self.length <= 0:
            raise MeasureError(f"segment length must be positive, got {self.length}")


def dirac(dim: int = 1) -> DiscreteMeasure:
    """Point mass at the origin"""
    return DiscreteMeasure((((Fraction(0),) * dim, Fraction(1)),), dim)


def uniform(points: Iterable[Union[RationalLike, Sequence[RationalLike]]], dim: int = 1) -> DiscreteMeasure:
    """Equal weights on a finite set of distinct points"""
    pts = [as_position(p) for p in points]
    if not pts:
        raise MeasureError("uniform measure needs at least one point")
    w = Fraction(1, len(pts))
    return DiscreteMeasure(tuple((p, w) for p in pts), dim)


def uniform_grid(n: int) -> DiscreteMeasure:
    """(1/n) * sum of delta_{j/n}, 0 <= j < n"""
    if n < 1:
        raise MeasureError(f"grid size must be >= 1, got {n}")
    return uniform(Fraction(j, n) for j in range(n))


def convolve(a: DiscreteMeasure, b: DiscreteMeasure) -> DiscreteMeasure:
    """Exact convolution: atoms on the sumset, weights multiplied and accumulated"""
    if a.dim != b.dim:
        raise MeasureError(f"cannot convolve measures of dimension {a.dim} and {b.dim}")

    acc: Dict[Position, Fraction] = defaultdict(Fraction)
    for x, wx in a.atoms:
        for y, wy in b.atoms:
            acc[tuple(xi + yi for xi, yi in zip(x, y))] += wx * wy

    return DiscreteMeasure(tuple(acc.items()), a.dim)


def convolve_all(measures: Iterable[DiscreteMeasure], dim: int = 1) -> DiscreteMeasure:
    """Left fold of convolve; the empty convolution is the point mass"""
    result = dirac(dim)
    for m in measures:
        result = convolve(result, m)
    return result


def product(factors: Sequence[DiscreteMeasure]) -> DiscreteMeasure:
    """Cartesian product of 1-dimensional measures"""
    if not factors:
        raise MeasureError("product of an empty factor list")
    for f in factors:
        f.require_dim(1)

    atoms = []
    for combo in cartesian(*(f.atoms for f in factors)):
        pos = tuple(p[0] for p, _ in combo)
        w = Fraction(1)
        for _, wi in combo:
            w *= wi
        atoms.append((pos, w))

    return DiscreteMeasure(tuple(atoms), len(factors))


def marginal(m: DiscreteMeasure, axis: int) -> DiscreteMeasure:
    """Pushforward under the projection onto one coordinate"""
    if not 0 <= axis < m.dim:
        raise MeasureError(f"axis {axis} out of range for dimension {m.dim}")

    acc: Dict[Position, Fraction] = defaultdict(Fraction)
    for pos, w in m.atoms:
        acc[(pos[axis],)] += w

    return DiscreteMeasure(tuple(acc.items()), 1)


def translate(m: DiscreteMeasure, shift: Union[RationalLike, Sequence[RationalLike]]) -> DiscreteMeasure:
    s = as_position(shift)
    if len(s) != m.dim:
        raise MeasureError(f"shift {s} does not match dimension {m.dim}")
    return DiscreteMeasure(tuple((tuple(p + d for p, d in zip(pos, s)), w) for pos, w in m.atoms), m.dim)


def scale(m: DiscreteMeasure, factor: RationalLike) -> DiscreteMeasure:
    f = Fraction(factor)
    if f == 0:
        raise MeasureError("scaling by zero collapses atoms")
    return DiscreteMeasure(tuple((tuple(p * f for p in pos), w) for pos, w in m.atoms), m.dim)


def support(m: DiscreteMeasure) -> Tuple[Fraction, Fraction]:
    """Smallest closed interval containing the atoms of a 1-dimensional measure"""
    m.require_dim(1)
    return m.atoms[0][0][0], m.atoms[-1][0][0]


def is_uniform_on_grid(m: DiscreteMeasure, n: int) -> bool:
    """True iff m is exactly (1/n) * sum of delta_{j/n}, 0 <= j < n"""
    m.require_dim(1)
    if n < 1 or len(m) != n:
        return False
    w = Fraction(1, n)
    return all(pos[0] == Fraction(j, n) and wj == w for j, (pos, wj) in enumerate(m.atoms))


def is_uniform_on_box_grid(m: DiscreteMeasure, ns: Sequence[int]) -> bool:
    """d-dimensional analogue: uniform on the product grid prod_i {j/n_i}"""
    if len(ns) != m.dim or any(n < 1 for n in ns):
        return False
    total = 1
    for n in ns:
        total *= n
    if len(m) != total:
        return False
    w = Fraction(1, total)
    expected = cartesian(*(range(n) for n in ns))
    for (pos, wj), idx in zip(m.atoms, expected):
        if wj != w or any(p != Fraction(j, n) for p, j, n in zip(pos, idx, ns)):
            return False
    return True
