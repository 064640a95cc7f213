"""Images and the binary grid file format.

Rendering maps CA states (value - k) through a small palette clamped to
[-5, 2], one pixel per cell, emitted as binary PPM (P6) for bit-exact
deterministic output.  Grid files use the "BQG1" format: the 4 magic
bytes, then k, width, height as little-endian uint32, then width*height
palace numbers as little-endian int32 in row-major order.  No padding,
no checksum.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import GridFormatError
from .grid import MAX_CELLS, PalaceGrid

# State -> RGB.  Entries below -5 clamp to -5, above 2 to 2.  The colors
# follow the usual naming for these pictures: dark brown for the deepest
# states, olives ramping to yellow at -1 (palaces), black at 0, blue and
# indigo above.
CLASSIC_PALETTE = {
    -5: (92, 51, 23),
    -4: (85, 107, 47),
    -3: (128, 128, 0),
    -2: (176, 196, 72),
    -1: (255, 223, 0),
    0: (0, 0, 0),
    1: (40, 60, 255),
    2: (75, 0, 130),
}

PALETTES = {"classic": CLASSIC_PALETTE}

MAGIC = b"BQG1"


def palette_color(state, palette=None):
    """RGB triple for a state, clamping outside [-5, 2]."""
    palette = palette or CLASSIC_PALETTE
    return palette[min(max(state, -5), 2)]


def _palette_lut(palette):
    lut = np.zeros((8, 3), np.uint8)
    for s in range(-5, 3):
        lut[s + 5] = palette_color(s, palette)
    return lut


def _ppm_bytes(rgb):
    h, w, _ = rgb.shape
    return b"P6\n%d %d\n255\n" % (w, h) + rgb.tobytes()


def render_ppm(grid, palette=None):
    """Render a grid to binary PPM, one pixel per cell.

    Deterministic: identical grid and palette give identical bytes.
    """
    idx = np.clip(grid.states(), -5, 2) + 5
    rgb = _palette_lut(palette or CLASSIC_PALETTE)[idx]
    return _ppm_bytes(rgb)


def render_mask_ppm(diff, palette=None):
    """Render a diff overlap: mismatches white, matches as grid A's colors."""
    states = diff.a_values.astype(np.int64) - diff.a_k
    idx = np.clip(states, -5, 2) + 5
    rgb = _palette_lut(palette or CLASSIC_PALETTE)[idx]
    rgb[diff.mask] = (255, 255, 255)
    return _ppm_bytes(rgb)


def grid_to_bytes(grid):
    """Serialize a grid in the BQG1 format."""
    header = MAGIC + struct.pack("<III", grid.k, grid.width, grid.height)
    return header + grid.values.astype("<i4").tobytes()


def grid_from_bytes(buf):
    """Decode a BQG1 file; GridFormatError pinpoints any defect."""
    if len(buf) < 4 or buf[:4] != MAGIC:
        raise GridFormatError(
            f"bad magic {buf[:4]!r}, expected {MAGIC!r}", offset=0)
    if len(buf) < 16:
        raise GridFormatError("truncated header", offset=len(buf))
    k, width, height = struct.unpack_from("<III", buf, 4)
    if k < 1:
        raise GridFormatError(f"k must be >= 1, got {k}", offset=4)
    if width < 1 or height < 1:
        raise GridFormatError(
            f"bad dimensions {width}x{height}", offset=8)
    if width * height > MAX_CELLS:
        raise GridFormatError(
            f"dimensions {width}x{height} overflow the cell limit", offset=8)
    expected = width * height
    payload = len(buf) - 16
    if payload != 4 * expected:
        raise GridFormatError(
            f"payload holds {payload // 4} values, expected {expected}",
            offset=16 + (payload // 4) * 4)
    values = np.frombuffer(buf, dtype="<i4", offset=16).reshape(height, width)
    return PalaceGrid(k, values)


def save_grid(grid, path):
    with open(path, "wb") as fh:
        fh.write(grid_to_bytes(grid))


def load_grid(path):
    with open(path, "rb") as fh:
        return grid_from_bytes(fh.read())
