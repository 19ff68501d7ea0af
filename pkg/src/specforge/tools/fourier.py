"""
Fourier Tool

Transforms  m^(xi) = integral of exp(-2 pi i xi x) dm(x)  of ladder factors,
truncated infinite products with rigorous tail bounds, integer zero sets and
the constant c bounding the tail products from below.

Floating point lives here and downstream; every truncation reports a bound.
Summation order is fixed (sorted atoms, ascending ladder index) so values are
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple
import cmath
import logging
import math
import sys

import numpy as np

from specforge.core.config import settings
from specforge.core.errors import AmbiguousClassificationError, FourierError, LadderError
from specforge.tools.ladder import Decomposition, FactorSpec, Ladder, is_complementary
from specforge.tools.measures import DiscreteMeasure

logger = logging.getLogger(__name__)

# Below this |sin(pi xi / (N_1...N_j))| the closed form is replaced by direct summation
SINGULARITY_CUTOFF = 1e-8
# Entries above this are never summed atom by atom
DIRECT_SUM_LIMIT = 4096

C_COEFFICIENT = 3 * math.pi ** 2 / 32
# expm1 overflows past this
MAX_EXPONENT = 700.0

Transform = Tuple[complex, float]


@dataclass(frozen=True)
class ZeroSetWindow:
    """Integer zeros of a transform restricted to [-window, window]"""

    window: int
    members: Tuple[int, ...]

    def __post_init__(self):
        if any(abs(m) > self.window for m in self.members):
            raise FourierError(f"zero set members exceed window {self.window}")

    def __contains__(self, m: int) -> bool:
        return m in self.members


def _scaled(x: float, p: int) -> float:
    """x / p without overflowing on huge integer p"""
    if p.bit_length() > 1000:
        return 0.0
    return x / p


def _sin_pi_ratio(x: float, p: int) -> float:
    """sin(pi x / p) with exact argument reduction modulo p"""
    if p.bit_length() > 1000:
        return math.sin(math.pi * _scaled(x, p))
    s = math.remainder(x, p)
    q = round((x - s) / p)
    v = math.sin(math.pi * s / p)
    return -v if q % 2 else v


def _finite(value: complex) -> complex:
    if not cmath.isfinite(value):
        raise FourierError(f"non-finite transform value {value}")
    return value


def roundoff_allowance(n_factors: int, xi: float) -> float:
    """Floating-point slack added to reported bounds"""
    return 32 * sys.float_info.epsilon * (n_factors + 1) * (1 + abs(xi))


def ft_discrete(m: DiscreteMeasure, xi: float) -> complex:
    """sum of w * exp(-2 pi i xi x) over the atoms, in sorted order"""
    m.require_dim(1)
    total = 0j
    for pos, w in m.atoms:
        phase = math.remainder(xi * float(pos[0]), 1.0)
        total += float(w) * cmath.exp(-2j * math.pi * phase)
    return _finite(total)


def ft_discrete_nd(m: DiscreteMeasure, xi: Sequence[float]) -> complex:
    if len(xi) != m.dim:
        raise FourierError(f"frequency {tuple(xi)} does not match dimension {m.dim}")
    total = 0j
    for pos, w in m.atoms:
        phase = math.remainder(sum(x * float(p) for x, p in zip(xi, pos)), 1.0)
        total += float(w) * cmath.exp(-2j * math.pi * phase)
    return _finite(total)


def ft_segment(length: Fraction, xi: float) -> complex:
    """Transform of the normalized Lebesgue measure on [0, length]"""
    t = xi * float(length)
    return _finite(cmath.exp(-1j * math.pi * t) * float(np.sinc(t)))


def _dirichlet_direct(n: int, p: int, xi: float) -> complex:
    total = 0j
    for r in range(n):
        phase = math.remainder(xi * (r / p), 1.0)
        total += cmath.exp(-2j * math.pi * phase)
    return total / n


def ft_factor(ladder: Ladder, j: int, xi: float) -> complex:
    """
    Closed form of nu_j^(xi):

        exp(-pi i (N_j - 1) xi / P_j) * sin(pi xi / P_{j-1}) / (N_j sin(pi xi / P_j))

    with P_j = N_1 ... N_j. Near the removable singularities (P_j-multiples)
    the value comes from direct summation instead.
    """
    n = ladder.entry(j)
    p_prev = ladder.prefix(j - 1)
    p = p_prev * n

    den = _sin_pi_ratio(xi, p)
    if abs(den) < SINGULARITY_CUTOFF:
        if n <= DIRECT_SUM_LIMIT:
            return _finite(_dirichlet_direct(n, p, xi))
        if den == 0.0:
            return 1 + 0j

    num = _sin_pi_ratio(xi, p_prev)
    phase = cmath.exp(-1j * math.pi * _scaled((n - 1) * xi, p))
    return _finite(phase * num / (n * den))


def _tail_sum(spec: FactorSpec, used: int, xi: float) -> float:
    """
    Sum of pi |xi| / P_{n-1} over the side factors past the first `used`.

    |nu_n^(xi) - 1| <= pi |xi| / P_{n-1}. Type II specs also cover every
    continuation of the ladder: unknown entries are >= 2, so later side
    factors shrink by at least 4 each and the rest is a geometric series.
    """
    ladder = spec.ladder
    a = abs(xi) * math.pi
    s = 0.0
    for n in spec.side.indices(spec.available)[used:]:
        s += _scaled(a, ladder.prefix(n - 1))

    if spec.decomposition is Decomposition.TYPE_I:
        if spec.carries_tail:
            # |L^_h(xi) - 1| <= pi |xi| h
            s += _scaled(a, ladder.total())
        return s

    length = len(ladder)
    first_unknown = length + 1 if spec.side.of_index(length + 1) is spec.side else length + 2
    floor_prefix = ladder.total() * 2 ** (first_unknown - 1 - length)
    s += _scaled(a, floor_prefix) * 4 / 3
    return s


def ft_truncated_product(spec: FactorSpec, K: int, xi: float) -> Transform:
    """
    Product of the first K side factors and a bound B with

        true value in value * [1 - B, 1 + B]

    For a Type I spec all discrete factors (and the Lebesgue tail on its
    side) make the value exact once K reaches the level.
    """
    if K < 1:
        raise FourierError(f"truncation must be >= 1, got {K}")

    used = min(K, spec.available)
    value = 1 + 0j
    for n in spec.side.indices(used):
        value *= ft_factor(spec.ladder, n, xi)

    if spec.decomposition is Decomposition.TYPE_I and used == spec.available:
        if spec.carries_tail:
            value *= ft_segment(Fraction(1, spec.ladder.total()), xi)
        return _finite(value), 0.0

    s = _tail_sum(spec, used, xi)
    return _finite(value), math.expm1(s) if s < MAX_EXPONENT else math.inf


def zero_set_factor(ladder: Ladder, n: int, W: int) -> ZeroSetWindow:
    """Integers in [-W, W] that are multiples of P_{n-1} but not of P_n"""
    if not 1 <= n <= len(ladder):
        raise LadderError(f"factor index {n} out of range for ladder of length {len(ladder)}")
    p_prev = ladder.prefix(n - 1)
    p = ladder.prefix(n)
    reach = W // p_prev
    members = tuple(t * p_prev for t in range(-reach, reach + 1) if (t * p_prev) % p)
    return ZeroSetWindow(W, members)


def in_zero_set(ladder: Ladder, n: int, m: int) -> bool:
    """Whether the integer m is a zero of nu_n^"""
    return m % ladder.prefix(n - 1) == 0 and m % ladder.prefix(n) != 0


def cross_check_zero_set(
    ladder: Ladder,
    n: int,
    W: int,
    zero_eps: float = 1e-10,
    separation: Optional[float] = None,
) -> bool:
    """Members must evaluate below zero_eps, every other integer above separation"""
    separation = settings.separation if separation is None else separation
    window = zero_set_factor(ladder, n, W)
    members = set(window.members)
    for m in range(-W, W + 1):
        v = abs(ft_factor(ladder, n, float(m)))
        if m in members and v >= zero_eps:
            logger.error(f"{m} listed as a zero of factor {n} but |value| = {v:.3e}")
            return False
        if m not in members and v <= separation:
            logger.error(f"{m} not listed as a zero of factor {n} but |value| = {v:.3e}")
            return False
    return True


def _classify(spec: FactorSpec, K: int, m: int, eps: float, separation: float) -> bool:
    """True if the transform vanishes at m, False if it certainly does not"""
    value, bound = ft_truncated_product(spec, K, float(m))
    slack = roundoff_allowance(K, m)
    hi = abs(value) * (1 + bound) + slack
    lo = abs(value) * (1 - bound) - slack
    if hi < eps:
        return True
    if lo > separation:
        return False
    raise AmbiguousClassificationError(
        f"cannot classify {spec.side.value} side at {m}: |value| = {abs(value):.3e}, "
        f"bound = {bound:.3e}; increase the truncation or the ladder length"
    )


def check_zero_partition(
    spec_a: FactorSpec,
    spec_b: FactorSpec,
    W: int,
    eps: Optional[float] = None,
    K: Optional[int] = None,
    separation: Optional[float] = None,
) -> bool:
    """For every 1 <= |m| <= W exactly one of the two transforms vanishes at m"""
    if not is_complementary(spec_a, spec_b):
        raise LadderError("zero partition needs the two sides of one ladder")
    eps = settings.zero_eps if eps is None else eps
    separation = settings.separation if separation is None else separation
    K = max(spec_a.available, spec_b.available, 1) if K is None else K

    for m in range(1, W + 1):
        for z in (m, -m):
            zero_a = _classify(spec_a, K, z, eps, separation)
            zero_b = _classify(spec_b, K, z, eps, separation)
            if zero_a == zero_b:
                logger.error(f"{z}: zero on {'both' if zero_a else 'neither'} side")
                return False
    return True


def c_factor(j: int) -> float:
    """(1 - (3 pi^2 / 32) / 16^(j-1))^2"""
    return (1 - C_COEFFICIENT / 16 ** (j - 1)) ** 2


def c_partial_products(count: int) -> List[float]:
    products = []
    acc = 1.0
    for j in range(1, count + 1):
        acc *= c_factor(j)
        products.append(acc)
    return products


def compute_c(spec: Optional[FactorSpec] = None, tol: float = 1e-12) -> float:
    """
    Lower bound c for the tail products |prod_{j>k} nu_{2j-1}^(xi + lambda)|^2

    The all-2 ladder gives the smallest factors; larger entries push every
    tail factor closer to 1, so the same c holds for any `spec`.

    Partial products of prod_j c_factor(j) until the remaining factors can
    move the value by less than tol: they multiply to at least
    1 - 2 * sum_{i>j} a_i with a_i = (3 pi^2/32) / 16^(i-1), and that sum is a_j / 15.
    """
    if spec is not None and not isinstance(spec, FactorSpec):
        raise FourierError(f"expected a FactorSpec, got {spec!r}")
    if tol <= 0:
        raise FourierError(f"tolerance must be positive, got {tol}")

    partial = 1.0
    j = 0
    while True:
        j += 1
        partial *= c_factor(j)
        a_j = C_COEFFICIENT / 16 ** (j - 1)
        if partial * 2 * a_j / 15 < tol:
            break

    logger.debug(f"c = {partial:.6e} after {j} factors")
    return partial


def sinc_identity_residual(spec_a: FactorSpec, spec_b: FactorSpec, K: int, xi: float) -> Tuple[float, float]:
    """
    |mu^(xi) nu^(xi) - L^(xi)| for L = Lebesgue measure on [0, 1], plus its bound.

    L^(xi) = exp(-pi i xi) sin(pi xi) / (pi xi); the modulus matches the
    centred identity mu^ nu^ = sin(pi xi) / (pi xi).
    """
    if not is_complementary(spec_a, spec_b):
        raise LadderError("transform identity needs the two sides of one ladder")
    va, ba = ft_truncated_product(spec_a, K, xi)
    vb, bb = ft_truncated_product(spec_b, K, xi)
    target = cmath.exp(-1j * math.pi * xi) * float(np.sinc(xi))
    residual = abs(va * vb - target)
    bound = abs(va) * abs(vb) * ((1 + ba) * (1 + bb) - 1) + roundoff_allowance(2 * K + 2, xi)
    return residual, bound


def transform_rows(
    spec: FactorSpec,
    K: int,
    xis: Iterable[float],
    map_fn: Callable = map,
) -> List[Tuple[float, float, float, float, float]]:
    """(xi, re, im, abs, bound) rows for CSV emission; `map_fn` must keep order"""

    def row(xi):
        value, bound = ft_truncated_product(spec, K, float(xi))
        return (float(xi), value.real, value.imag, abs(value), bound)

    return list(map_fn(row, xis))
