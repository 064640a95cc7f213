import numpy as np
import pytest

from blocknim import PalaceGrid, RowStream, queen_options, solve_grid
from blocknim.errors import ResourceLimitError


def recount_palace_number(values, k, x, y):
    """Definitional recount: palaces visible north, west, and northwest."""
    north = sum(values[j][x] < k for j in range(y))
    west = sum(values[y][i] < k for i in range(x))
    diag = sum(values[y - t][x - t] < k for t in range(1, min(x, y) + 1))
    return north + west + diag


def test_options_origin_empty():
    assert queen_options((0, 0)) == []


def test_options_enumeration_1_1():
    assert set(queen_options((1, 1))) == {(0, 1), (1, 0), (0, 0)}


def test_options_cardinality_and_membership():
    opts = queen_options((3, 3))
    assert len(opts) == 3 + 3 + 3
    assert len(set(opts)) == len(opts)
    # the example-game options are all present
    for pos in [(3, 1), (3, 2), (2, 2), (2, 3), (1, 3)]:
        assert pos in opts


def test_options_rejects_negative():
    with pytest.raises(ValueError):
        queen_options((-1, 2))


def test_solve_known_values_k5():
    g = solve_grid(5, 11, 11)
    assert g.value(0, 0) == 0
    assert g.value(3, 3) == 4
    assert g.value(2, 2) == 6
    assert g.value(3, 1) == 5
    assert g.value(0, 3) == 3


def test_is_palace_k5():
    g = solve_grid(5, 11, 11)
    assert g.is_palace(0, 3)          # value 3 < 5
    assert not g.is_palace(2, 2)      # value 6
    assert g.is_palace(0, 0)


def test_is_palace_out_of_bounds():
    g = solve_grid(5, 11, 11)
    with pytest.raises(IndexError):
        g.is_palace(11, 0)
    with pytest.raises(IndexError):
        g.value(0, -1)


def test_k1_p_positions_are_wythoff_pairs():
    # Beatty pairs for n <= 3, within an 8x8 window.
    g = solve_grid(1, 8, 8)
    expected = {(0, 0), (1, 2), (2, 1), (3, 5), (5, 3), (4, 7), (7, 4)}
    actual = {(x, y) for y in range(8) for x in range(8) if g.is_palace(x, y)}
    assert actual == expected


def test_recount_oracle_random_cells():
    rng = np.random.default_rng(20240613)
    for k in (3, 7, 20):
        g = solve_grid(k, 80, 60)
        rows = g.values.tolist()
        for _ in range(120):
            x = int(rng.integers(0, 80))
            y = int(rng.integers(0, 60))
            assert g.value(x, y) == recount_palace_number(rows, k, x, y)


def test_value_range_and_symmetry():
    for k in (1, 4, 9):
        g = solve_grid(k, 70, 70)
        assert g.values.min() >= 0
        assert g.values.max() <= 3 * k
        assert np.array_equal(g.values, g.values.T)


def test_direction_prefix_caps():
    k = 6
    g = solve_grid(k, 90, 90)
    p = g.palace_mask()
    assert np.cumsum(p, axis=0).max() <= k
    assert np.cumsum(p, axis=1).max() <= k
    for d in range(-89, 90):
        assert np.diagonal(p, offset=d).cumsum().max() <= k


def test_first_row_saturates_at_k():
    stream = RowStream(5, 11)
    row = next(stream)
    assert row.tolist() == [0, 1, 2, 3, 4, 5, 5, 5, 5, 5, 5]


def test_stream_matches_batch():
    for k, w, h in ((1, 17, 23), (5, 40, 31), (100, 300, 300)):
        stream = RowStream(k, w)
        block = stream.take(h)
        assert block == solve_grid(k, w, h)


def test_stream_counters_stay_small():
    stream = RowStream(7, 50)
    for _ in range(400):
        next(stream)
    assert stream.col_counts.size == 50
    # diagonal storage grows with rows emitted, geometrically padded
    assert stream.diag_counts.size <= 50 + 2 * 400
    assert stream.col_counts.max() <= 7
    assert stream.diag_counts.max() <= 7


def test_param_validation():
    with pytest.raises(ValueError):
        solve_grid(0, 4, 4)
    with pytest.raises(ValueError):
        solve_grid(3, 0, 4)
    with pytest.raises(ResourceLimitError):
        solve_grid(3, 2**16, 2**16)


def test_grid_is_immutable():
    g = solve_grid(2, 5, 5)
    with pytest.raises(ValueError):
        g.values[0, 0] = 9


def test_grid_equality():
    assert solve_grid(3, 6, 7) == solve_grid(3, 6, 7)
    assert solve_grid(3, 6, 7) != solve_grid(4, 6, 7)
    assert PalaceGrid(2, [[0, 1]]) == PalaceGrid(2, [[0, 1]])


def test_grid_constructor_validation():
    with pytest.raises(ValueError):
        PalaceGrid(0, [[0]])
    with pytest.raises(ValueError):
        PalaceGrid(2, [0, 1, 2])
