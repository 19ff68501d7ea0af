import pytest

from specforge.services.grid_pool import GridPool


@pytest.mark.parametrize("threads", [1, 2, 4])
def test_map_keeps_order(threads):
    with GridPool(threads) as pool:
        assert pool.map(lambda x: x * x, range(50)) == [x * x for x in range(50)]
        assert pool.tasks_run == 50


def test_errors_propagate():
    def boom(x):
        if x == 3:
            raise ValueError("boom")
        return x

    with GridPool(2) as pool:
        with pytest.raises(ValueError):
            pool.map(boom, range(6))


def test_close_is_idempotent():
    pool = GridPool(2)
    pool.map(str, range(4))
    pool.close()
    pool.close()
    assert pool.map(str, [1, 2]) == ["1", "2"]
    pool.close()


def test_thread_count_floor():
    assert GridPool(0).threads >= 1
