import random

import pytest

from specforge.tools.ladder import Decomposition, Ladder, complementary_pair, ladders_up_to


@pytest.fixture(scope="session")
def quarter_cantor():
    """All-2 ladder, Type II: the 1/4-Cantor pair, long enough for K = 24"""
    return complementary_pair(Ladder.from_pattern((2,), 48), Decomposition.TYPE_II)


@pytest.fixture(scope="session")
def long_quarter_cantor():
    return complementary_pair(Ladder.from_pattern((2,), 80), Decomposition.TYPE_II)


@pytest.fixture(scope="session")
def small_ladders():
    """Every ladder over {2, 3, 4, 5} with product <= 256"""
    return ladders_up_to(256)


@pytest.fixture(scope="session")
def sampled_ladders(all_ladders):
    """Seeded sample of ladders with product in (256, 4096]"""
    everything = [l for l in all_ladders if l.total() > 256]
    return random.Random(20240611).sample(everything, 40)


@pytest.fixture(scope="session")
def all_ladders():
    """Every ladder over {2, 3, 4, 5} with product <= 4096"""
    return ladders_up_to(4096)
