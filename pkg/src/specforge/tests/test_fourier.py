from fractions import Fraction
import math

import numpy as np
import pytest

from specforge.core.errors import AmbiguousClassificationError, FourierError, LadderError
from specforge.tests.helpers import type1_pair
from specforge.tools.fourier import (
    c_factor,
    c_partial_products,
    check_zero_partition,
    compute_c,
    cross_check_zero_set,
    ft_discrete,
    ft_discrete_nd,
    ft_factor,
    ft_segment,
    ft_truncated_product,
    in_zero_set,
    sinc_identity_residual,
    transform_rows,
    zero_set_factor,
)
from specforge.tools.ladder import Decomposition, Ladder, Side, complementary_pair, nu_factor
from specforge.tools.measures import dirac, product, uniform, uniform_grid
from specforge.services.grid_pool import GridPool
from specforge.tools.spectra import tail_product_floor, xi_grid

F = Fraction


@pytest.mark.parametrize("entries", [(2, 2, 3), (5, 3), (4, 2, 5), (3,)])
@pytest.mark.parametrize("xi", [0.0, 0.3, -1.7, 2.0, 6.0, 12.0, 12.000000001, -30.25, 97.5])
def test_closed_form_matches_direct_sum(entries, xi):
    ladder = Ladder(entries)
    for j in range(1, len(ladder) + 1):
        direct = ft_discrete(nu_factor(ladder, j), xi)
        assert abs(ft_factor(ladder, j, xi) - direct) < 1e-12


def test_factor_is_one_at_multiples_of_its_grid():
    ladder = Ladder((3, 4))
    for q in range(-3, 4):
        assert abs(ft_factor(ladder, 2, 12.0 * q) - 1) < 1e-14


def test_point_mass_and_half_masses():
    assert ft_discrete(dirac(), 3.7) == 1
    assert abs(ft_discrete(uniform([0, F(1, 2)]), 1.0)) < 1e-15


def test_transform_in_two_dimensions():
    m = product([uniform_grid(2), uniform_grid(2)])
    assert abs(ft_discrete_nd(m, [0.0, 0.0]) - 1) < 1e-15
    assert abs(ft_discrete_nd(m, [1.0, 0.0])) < 1e-15
    with pytest.raises(FourierError):
        ft_discrete_nd(m, [1.0])


def test_segment_transform():
    assert ft_segment(F(1), 0.0) == 1
    assert abs(ft_segment(F(1), 1.0)) < 1e-15
    assert abs(abs(ft_segment(F(1, 2), 1.0)) - 2 / math.pi) < 1e-15


def test_truncated_product_at_zero():
    odd, _ = complementary_pair(Ladder.from_pattern((2,), 10), Decomposition.TYPE_II)
    assert ft_truncated_product(odd, 3, 0.0) == (1, 0.0)


def test_truncation_bound_shrinks_with_k(quarter_cantor):
    odd, _ = quarter_cantor
    bounds = [ft_truncated_product(odd, K, 0.3)[1] for K in (1, 2, 4, 8, 16)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:]))
    assert bounds[-1] < 1e-9


def test_truncation_bound_holds(quarter_cantor):
    odd, _ = quarter_cantor
    for xi in (0.25, -3.5, 7.1):
        exact, _ = ft_truncated_product(odd, 24, xi)
        value, bound = ft_truncated_product(odd, 3, xi)
        assert abs(exact - value) <= abs(value) * bound + 1e-12


def test_type1_products_are_exact():
    odd, even = type1_pair((2, 3))
    for spec in (odd, even):
        _, bound = ft_truncated_product(spec, 5, 4.2)
        assert bound == 0.0


def test_truncation_must_be_positive(quarter_cantor):
    with pytest.raises(FourierError):
        ft_truncated_product(quarter_cantor[0], 0, 0.5)


def test_zero_sets_of_the_all_two_ladder():
    ladder = Ladder((2, 2, 2))
    assert zero_set_factor(ladder, 1, 6).members == (-5, -3, -1, 1, 3, 5)
    assert zero_set_factor(ladder, 2, 6).members == (-6, -2, 2, 6)
    assert zero_set_factor(ladder, 3, 6).members == (-4, 4)
    assert in_zero_set(ladder, 3, 12)
    assert not in_zero_set(ladder, 3, 8)
    with pytest.raises(LadderError):
        zero_set_factor(ladder, 4, 6)


@pytest.mark.parametrize("entries", [(2, 2, 2, 2), (3, 5, 2), (4, 3)])
def test_zero_sets_agree_with_numeric_values(entries):
    ladder = Ladder(entries)
    for n in range(1, len(ladder) + 1):
        assert cross_check_zero_set(ladder, n, 200)


def test_zero_partition_quarter_cantor(quarter_cantor):
    odd, even = quarter_cantor
    assert check_zero_partition(odd, even, 4096, eps=1e-8, K=24, separation=1e-6)


def test_zero_partition_type1():
    odd, even = type1_pair((2, 2))
    assert check_zero_partition(odd, even, 64)
    odd, even = type1_pair((3, 2, 2, 4), tail=Side.ODD)
    assert check_zero_partition(odd, even, 100)


def test_zero_partition_short_ladder_is_ambiguous():
    odd, even = complementary_pair(Ladder.from_pattern((2,), 4), Decomposition.TYPE_II)
    with pytest.raises(AmbiguousClassificationError):
        check_zero_partition(odd, even, 32)


def test_zero_partition_needs_a_pair(quarter_cantor):
    odd, _ = quarter_cantor
    with pytest.raises(LadderError):
        check_zero_partition(odd, odd, 4)


def test_sinc_identity_quarter_cantor(long_quarter_cantor):
    odd, even = long_quarter_cantor
    for xi in np.linspace(-10, 10, 1000):
        residual, bound = sinc_identity_residual(odd, even, 40, float(xi))
        assert residual <= bound
        assert bound < 1e-9


def test_sinc_identity_type1():
    odd, even = type1_pair((3, 2))
    for xi in (-4.5, 0.1, 2.0, 7.3):
        residual, bound = sinc_identity_residual(odd, even, 4, xi)
        assert residual <= bound


def test_compute_c():
    c = compute_c(tol=1e-12)
    assert 0 < c < 1
    assert abs(c_factor(1) - (1 - 3 * math.pi ** 2 / 32) ** 2) < 1e-12
    assert c == pytest.approx(4.9185e-3, rel=1e-3)


def test_partial_products_decrease_to_c():
    products = c_partial_products(8)
    assert all(a > b for a, b in zip(products, products[1:]))
    assert products[-1] == pytest.approx(compute_c(tol=1e-14), rel=1e-8)


def test_compute_c_is_shared_by_every_ladder(quarter_cantor):
    odd, even = quarter_cantor
    c = compute_c()
    assert compute_c(odd) == c
    assert compute_c(type1_pair((3, 5))[0]) == c


def test_compute_c_needs_positive_tolerance():
    with pytest.raises(FourierError):
        compute_c(tol=0)
    with pytest.raises(FourierError):
        compute_c(1e-12)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_tail_products_stay_above_c(quarter_cantor, k):
    odd, _ = quarter_cantor
    assert tail_product_floor(odd, k, 24, xi_grid(21)) >= compute_c(odd)


def test_transform_rows_match_pointwise_values(quarter_cantor):
    odd, _ = quarter_cantor
    xis = np.linspace(-3.0, 3.0, 13)
    rows = transform_rows(odd, 12, xis)
    assert [r[0] for r in rows] == pytest.approx(list(xis))
    for xi, re, im, modulus, bound in rows:
        value, b = ft_truncated_product(odd, 12, xi)
        assert (re, im, bound) == (value.real, value.imag, b)
        assert modulus == pytest.approx(math.hypot(re, im))

    with GridPool(3) as pool:
        assert transform_rows(odd, 12, xis, map_fn=pool.map) == rows
