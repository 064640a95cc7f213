"""Palace-number grids and the direct three-direction dynamic program.

Coordinates follow the game board: ``(0, 0)`` is the upper-left corner,
``x`` grows rightward (column index) and ``y`` grows downward (row index).
The queen at ``(x, y)`` may move west (smaller x), north (smaller y), or
northwest (both smaller by the same amount).

A position's *palace number* is the count of palaces it can see looking
due north, west, and northwest, where a palace is any position whose own
palace number is below the blocking parameter ``k``.  Palaces are exactly
the P-positions of the game.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import ResourceLimitError

# Palace numbers are stored as signed 32-bit integers (they share a
# representation with CA states, which are values minus k and may be
# negative).  Values never exceed 3k, so k is capped accordingly.
MAX_CELLS = 2**31 - 1
MAX_K = (2**31 - 1) // 3


def _check_params(k, width, height):
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > MAX_K:
        raise ValueError(f"k too large for 32-bit palace numbers: {k}")
    if width < 1 or height < 1:
        raise ValueError(f"grid dimensions must be >= 1, got {width}x{height}")
    if width * height > MAX_CELLS:
        raise ResourceLimitError(
            f"{width}x{height} exceeds the {MAX_CELLS}-cell limit")


class PalaceGrid:
    """A rectangular block of palace numbers for one game.

    Wraps an immutable ``(height, width)`` int32 array; ``value(x, y)``
    reads ``values[y, x]``.
    """

    def __init__(self, k, values):
        values = np.ascontiguousarray(values, dtype=np.int32)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D array")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        values.flags.writeable = False
        self.k = int(k)
        self.values = values

    @property
    def width(self):
        return self.values.shape[1]

    @property
    def height(self):
        return self.values.shape[0]

    def value(self, x, y):
        """Palace number at column x, row y."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"position ({x}, {y}) outside "
                             f"{self.width}x{self.height} grid")
        return int(self.values[y, x])

    def is_palace(self, x, y):
        """True iff (x, y) is a P-position, i.e. its palace number is < k."""
        return self.value(x, y) < self.k

    def states(self):
        """CA view of the grid: palace numbers minus k."""
        return self.values.astype(np.int64) - self.k

    def palace_mask(self):
        """Boolean array marking palaces (value < k)."""
        return self.values < self.k

    def __eq__(self, other):
        if not isinstance(other, PalaceGrid):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"PalaceGrid(k={self.k}, {self.width}x{self.height})"


def queen_options(pos):
    """All positions the queen may move to from ``pos``.

    Moves go toward the origin: west, north, or diagonally northwest.
    The result has exactly ``x + y + min(x, y)`` entries.
    """
    x, y = pos
    if x < 0 or y < 0:
        raise ValueError(f"position must be non-negative, got {pos}")
    opts = [(i, y) for i in range(x)]
    opts += [(x, j) for j in range(y)]
    opts += [(x - t, y - t) for t in range(1, min(x, y) + 1)]
    return opts


def solve_grid(k, width, height):
    """Compute the full palace-number grid by dynamic programming.

    Evaluates cells in raster order; each cell only needs the palace
    counts accumulated in its column, row, and diagonal, so the pass is
    a single sweep.
    """
    _check_params(k, width, height)
    values = np.empty((height, width), np.int32)
    _kernels.solve_rows_into(k, values)
    return PalaceGrid(k, values)


class RowStream:
    """Streaming row-by-row solver with O(width + rows) working memory.

    Iterating yields consecutive rows of palace numbers as int32 arrays.
    The only state kept between rows is one set of direction counters:
    ``col_counts`` (one per column), ``diag_counts`` (one per northwest
    diagonal seen so far), and the within-row palace count maintained by
    the kernel.  After h rows the concatenated output is bit-identical to
    ``solve_grid(k, width, h)``.

    Not shareable mid-iteration: one consumer per stream.
    """

    def __init__(self, k, width):
        _check_params(k, width, 1)
        self.k = int(k)
        self.width = int(width)
        self.rows_emitted = 0
        self.col_counts = np.zeros(width, np.int32)
        # Diagonal x - y is stored at index x - y + _diag_offset.  New
        # diagonals enter on the left as rows advance, so the array grows
        # (geometrically, to amortize) ahead of the row index.
        self._diag_offset = 64
        self.diag_counts = np.zeros(width + self._diag_offset, np.int32)
        self.last_row_palaces = 0

    def __iter__(self):
        return self

    def __next__(self):
        y = self.rows_emitted
        if y >= self._diag_offset:
            grow = self._diag_offset
            self.diag_counts = np.concatenate(
                [np.zeros(grow, np.int32), self.diag_counts])
            self._diag_offset += grow
        row = np.empty(self.width, np.int32)
        self.last_row_palaces = int(_kernels.solve_one_row(
            self.k, y, self._diag_offset, self.col_counts,
            self.diag_counts, row))
        self.rows_emitted += 1
        return row

    def take(self, rows):
        """Collect the next ``rows`` rows into a PalaceGrid."""
        block = np.empty((rows, self.width), np.int32)
        for i in range(rows):
            block[i] = next(self)
        return PalaceGrid(self.k, block)
