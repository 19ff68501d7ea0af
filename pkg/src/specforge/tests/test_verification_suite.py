import pytest

from specforge.core.errors import InputError
from specforge.jobs.verification_suite import (
    SuiteOptions,
    VerificationSuite,
    exact_extent,
    require_within_cap,
)
from specforge.services.grid_pool import GridPool
from specforge.tests.helpers import type1_pair
from specforge.tools.ladder import Decomposition, Ladder, Side, complementary_pair
from specforge.tools.spectra import Spectrum, type2_tiling_sets

EXPECTED_CHECKS = [
    "factor_chain",
    "gram_structural[odd]",
    "gram_numeric[odd]",
    "gram_structural[even]",
    "gram_numeric[even]",
    "zero_partition",
    "tiling",
    "q_grid[odd]",
    "q_grid[even]",
    "transform_identity",
]


@pytest.fixture
def quarter_cantor_level4():
    return complementary_pair(Ladder.from_pattern((2,), 48), Decomposition.TYPE_II, level=4)


def _suite(threads=2, **overrides):
    options = SuiteOptions(window=64, grid=21, trunc=24, tol=1e-10)
    for name, value in overrides.items():
        setattr(options, name, value)
    return VerificationSuite(GridPool(threads), options)


def test_extent_of_type2_prefix(quarter_cantor_level4):
    odd, even = quarter_cantor_level4
    assert exact_extent(odd) == 256
    assert exact_extent(even) == 256


def test_extent_of_type1_is_whole_ladder():
    odd, _ = type1_pair((3, 5))
    assert exact_extent(odd) == 15


def test_cap_rejects_large_extent(quarter_cantor_level4):
    odd, _ = quarter_cantor_level4
    require_within_cap(odd, cap=256)
    with pytest.raises(InputError):
        require_within_cap(odd, cap=255)


def test_quarter_cantor_passes(quarter_cantor_level4):
    results = _suite().run(*quarter_cantor_level4)
    assert [r.name for r in results] == EXPECTED_CHECKS
    assert all(r.passed for r in results), [r for r in results if not r.passed]


@pytest.mark.parametrize("tail", list(Side))
def test_type1_passes(tail):
    results = _suite(window=50).run(*type1_pair((2, 2), tail))
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_wrong_spectrum_fails(quarter_cantor_level4):
    odd, even = quarter_cantor_level4
    results = _suite().run(odd, even, {Side.ODD: Spectrum((0, 2, 4, 6))})
    failed = {r.name for r in results if not r.passed}
    assert "gram_structural[odd]" in failed
    assert "gram_numeric[odd]" in failed
    assert "gram_structural[even]" not in failed
    assert "tiling" in failed
    tiling = next(r for r in results if r.name == "tiling")
    assert "supplied spectra for odd" in tiling.detail


def test_supplied_tiling_set_is_used(quarter_cantor_level4):
    odd, even = quarter_cantor_level4
    sa, _, _ = type2_tiling_sets(odd.ladder, 64)
    results = _suite().run(odd, even, {Side.ODD: sa})
    tiling = next(r for r in results if r.name == "tiling")
    assert tiling.passed
    assert "supplied spectra for odd" in tiling.detail


def test_short_ladder_records_ambiguity():
    odd, even = complementary_pair(Ladder.from_pattern((2,), 4), Decomposition.TYPE_II)
    results = _suite(window=32, trunc=4).run(odd, even)
    zero = next(r for r in results if r.name == "zero_partition")
    assert not zero.passed
    assert zero.detail


def test_results_do_not_depend_on_threads(quarter_cantor_level4):
    one = _suite(threads=1, grid=11).run(*quarter_cantor_level4)
    four = _suite(threads=4, grid=11).run(*quarter_cantor_level4)
    assert [r.model_dump() for r in one] == [r.model_dump() for r in four]
