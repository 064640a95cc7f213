import numpy as np
import pytest

from blocknim import (PalaceGrid, diff_grids, grid_from_bytes, grid_to_bytes,
                      load_grid, palette_color, render_mask_ppm, render_ppm,
                      save_grid, solve_grid)
from blocknim.errors import GridFormatError


def test_palette_entries():
    assert palette_color(-1) == (255, 223, 0)
    assert palette_color(0) == (0, 0, 0)
    assert palette_color(1) == (40, 60, 255)
    # clamping at both ends
    assert palette_color(-12) == palette_color(-5) == (92, 51, 23)
    assert palette_color(9) == palette_color(2) == (75, 0, 130)


def test_render_golden_bytes():
    g = PalaceGrid(1, [[0, 1]])          # states -1, 0: yellow then black
    assert render_ppm(g) == b"P6\n2 1\n255\n" + bytes(
        (255, 223, 0, 0, 0, 0))


def test_render_k5_example_pixel():
    g = solve_grid(5, 11, 11)
    data = render_ppm(g)
    header = b"P6\n11 11\n255\n"
    assert data.startswith(header)
    pixels = np.frombuffer(data[len(header):], np.uint8).reshape(11, 11, 3)
    assert tuple(pixels[3, 3]) == (255, 223, 0)      # state -1 at (3,3)
    assert tuple(pixels[0, 0]) == (92, 51, 23)       # state -5 at origin


def test_render_deterministic():
    g = solve_grid(13, 97, 64)
    assert render_ppm(g) == render_ppm(g)


def test_mask_render():
    g = solve_grid(7, 30, 30)
    identity = diff_grids(g, g, (0, 0), 0)
    data = render_mask_ppm(identity)
    pixels = np.frombuffer(data[len(b"P6\n30 30\n255\n"):], np.uint8)
    assert not (pixels.reshape(-1, 3) == (255, 255, 255)).all(axis=1).any()

    broken = diff_grids(g, g, (0, 0), 5)             # everything mismatches
    data = render_mask_ppm(broken)
    pixels = np.frombuffer(data[len(b"P6\n30 30\n255\n"):], np.uint8)
    assert (pixels == 255).all()


def test_roundtrip():
    g = solve_grid(5, 11, 11)
    assert grid_from_bytes(grid_to_bytes(g)) == g


def test_roundtrip_rectangular_file(tmp_path):
    g = solve_grid(9, 33, 17)
    path = tmp_path / "grid.bqg"
    save_grid(g, path)
    assert load_grid(path) == g


def test_bad_magic():
    g = solve_grid(2, 3, 3)
    data = b"BQGX" + grid_to_bytes(g)[4:]
    with pytest.raises(GridFormatError) as err:
        grid_from_bytes(data)
    assert err.value.offset == 0


def test_truncated_payload_names_counts():
    data = grid_to_bytes(solve_grid(2, 3, 3))[:-4]
    with pytest.raises(GridFormatError) as err:
        grid_from_bytes(data)
    assert "expected 9" in str(err.value)
    assert "8" in str(err.value)


def test_trailing_garbage_rejected():
    data = grid_to_bytes(solve_grid(2, 3, 3)) + b"\x00\x00\x00\x00"
    with pytest.raises(GridFormatError):
        grid_from_bytes(data)


def test_zero_dimension_rejected():
    import struct
    data = b"BQG1" + struct.pack("<III", 2, 0, 3)
    with pytest.raises(GridFormatError) as err:
        grid_from_bytes(data)
    assert err.value.offset == 8


def test_header_truncation():
    with pytest.raises(GridFormatError):
        grid_from_bytes(b"BQG1\x01\x00")


def test_dimension_overflow_rejected():
    import struct
    data = b"BQG1" + struct.pack("<III", 2, 2**16, 2**16)
    with pytest.raises(GridFormatError) as err:
        grid_from_bytes(data)
    assert "overflow" in str(err.value)
    assert err.value.offset == 8


def test_format_is_little_endian_row_major():
    g = PalaceGrid(2, [[0, 1, 2], [3, 4, 5]])
    data = grid_to_bytes(g)
    assert data[:4] == b"BQG1"
    assert data[4:16] == (2).to_bytes(4, "little") + \
        (3).to_bytes(4, "little") + (2).to_bytes(4, "little")
    values = np.frombuffer(data[16:], "<i4")
    assert values.tolist() == [0, 1, 2, 3, 4, 5]
