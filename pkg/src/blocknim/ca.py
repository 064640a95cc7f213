"""The k-independent local rule that reproduces palace-number grids.

Shifting every palace number down by k gives cell states that follow a
local rule: the state at (x, y) is determined by six earlier states,

    far_nw (x-2, y-2)    nnw (x-1, y-2)
    wnw    (x-2, y-1)    nw  (x-1, y-1)    north (x, y-1)
    west   (x-1, y)

via ``far_nw - nnw - wnw + north + west + p`` where ``p`` adds a fixed
compensation weight for each of the six that is negative (i.e. a palace).
The rule itself does not mention k; the game parameter enters only through
the initial condition on the three quadrants outside the board.

Because each cell depends on states up to two rows and two columns back,
this is a fourth-order rule when viewed as a one-dimensional automaton on
anti-diagonal time slices.  Evaluating in raster order gives the same
result and shares the solver's layout.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .grid import PalaceGrid, _check_params

# Compensation weight per neighborhood slot, applied when that state is
# negative.  The nw slot contributes only through its sign.
COMPENSATION_WEIGHTS = {
    "far_nw": 3,
    "nnw": -2,
    "wnw": -2,
    "nw": -1,
    "north": 1,
    "west": 1,
}


def local_rule(far_nw, nnw, wnw, nw, north, west):
    """Next state from the six predecessor states.

    Pure integer function; thread-safe.
    """
    p = (3 * (far_nw < 0) - 2 * (nnw < 0) - 2 * (wnw < 0)
         - (nw < 0) + (north < 0) + (west < 0))
    return far_nw - nnw - wnw + north + west + p


def boundary_state(k, x, y):
    """Initial-condition state for a position outside the game quadrant.

    k in the opposite quadrant (both coordinates negative), 0 in the two
    side quadrants.
    """
    if x >= 0 and y >= 0:
        raise ValueError(f"({x}, {y}) is inside the game quadrant")
    if x < 0 and y < 0:
        return k
    return 0


def run_ca(k, width, height):
    """Evaluate the local rule over the game quadrant.

    Out-of-quadrant reads use ``boundary_state`` virtually; nothing is
    stored for the other three quadrants.  Returns states + k as a
    PalaceGrid, which must match ``solve_grid`` exactly.
    """
    _check_params(k, width, height)
    st = np.empty((height, width), np.int32)
    _kernels.ca_rows_into(k, st)
    return PalaceGrid(k, st + np.int32(k))


def reverse_states(nnw, wnw, nw, north, west, cell):
    """All ``far_nw`` states consistent with the other six states.

    Solving the forward rule for far_nw gives
    ``rhs = cell - west - north + wnw + nnw - p`` where p collects the
    compensations of the five known states.  far_nw's own compensation
    (+3 when negative) cannot be isolated, so:

    - rhs >= 3: only ``rhs`` works (a non-negative far_nw),
    - rhs < 0:  only ``rhs - 3`` works (a negative far_nw),
    - rhs in {0, 1, 2}: both work and the reversal is a free choice.

    Every returned value satisfies the forward rule, so no pattern lacks
    a pre-image.  Callers needing a single value must pick one themselves.
    """
    p_known = (-2 * (nnw < 0) - 2 * (wnw < 0) - (nw < 0)
               + (north < 0) + (west < 0))
    rhs = cell - west - north + wnw + nnw - p_known
    if rhs >= 3:
        return frozenset((rhs,))
    if rhs < 0:
        return frozenset((rhs - 3,))
    return frozenset((rhs, rhs - 3))
