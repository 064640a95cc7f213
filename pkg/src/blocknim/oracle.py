"""Independent verification of P-positions by explicit game-tree search.

The game: on your turn you move the queen toward the origin (west, north,
or northwest); the opponent has previously blocked up to k-1 of your
possible moves.  After moving you place the blocks for the opponent's
turn.  Whoever cannot move loses.

``GameTreeSearch`` solves small instances directly from these rules,
without palace numbers, so it can cross-check the solvers.  Only blocks
on the queen's current options matter, so block sets are restricted to
subsets of the moved-to position's options (pawns elsewhere never affect
legality) and memo keys canonicalize the blocked set by intersecting it
with the current option set.
"""

from __future__ import annotations

import math
from itertools import combinations

from .errors import SearchLimitError
from .grid import queen_options


class GameTreeSearch:
    """Exhaustive solver for desk-scale positions.

    Intended bounds are coordinates <= 7 and k <= 3 (the search is
    exponential in k); both limits are configurable.  Queries outside the
    bounds raise SearchLimitError.

    The memo table makes concurrent queries return the same values as
    sequential ones (entries are only ever written with the same final
    value), but the class is intended for single-threaded use.
    """

    def __init__(self, k, max_coord=7, max_k=3):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if k > max_k:
            raise SearchLimitError(f"k={k} beyond configured bound {max_k}")
        self.k = k
        self.max_coord = max_coord
        self._memo = {}
        self._options = {}

    def _check_bounds(self, pos):
        x, y = pos
        if x > self.max_coord or y > self.max_coord:
            raise SearchLimitError(
                f"position {pos} beyond configured bound {self.max_coord}")

    def options(self, pos):
        if pos not in self._options:
            self._options[pos] = tuple(queen_options(pos))
        return self._options[pos]

    def _block_sets(self, opts):
        # Candidate block sets, largest first: blocking more squares never
        # helps the mover, so losing blocks tend to be found early.
        limit = min(self.k - 1, len(opts))
        for size in range(limit, -1, -1):
            yield from combinations(opts, size)

    def mover_wins(self, queen, blocked=frozenset()):
        """True iff the player to move (queen at ``queen``, moves in
        ``blocked`` unavailable) wins with optimal play."""
        self._check_bounds(queen)
        if len(blocked) > self.k - 1:
            raise ValueError(
                f"{len(blocked)} blocked positions, only k-1={self.k - 1} "
                f"pawns exist")
        if queen in blocked:
            raise ValueError(f"queen {queen} cannot share a blocked square")
        opts = self.options(queen)
        key = (queen, frozenset(b for b in blocked if b in opts))
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = False
        for move in opts:
            if move in blocked:
                continue
            if self._reaches_win(move):
                result = True
                break
        self._memo[key] = result
        return result

    def _reaches_win(self, move):
        # Moving to ``move`` wins iff some allowed block set leaves the
        # opponent without a winning reply.
        for blocks in self._block_sets(self.options(move)):
            if not self.mover_wins(move, frozenset(blocks)):
                return True
        return False

    def is_p(self, pos):
        """True iff the player who just moved to ``pos`` can win, i.e.
        can block the opponent into a loss.  Matches ``is_palace``."""
        self._check_bounds(pos)
        return self._reaches_win(pos)


def wythoff_pair(n):
    """The n-th P-position pair of the unblocked game (k=1) and its mirror.

    Evaluates (floor(n*phi), floor(n*phi^2)) with exact integer
    arithmetic: floor(n*phi) = (n + isqrt(5 n^2)) // 2, and
    floor(n*phi^2) = floor(n*phi) + n.  No floating point, so the values
    are exact for any n.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a = (n + math.isqrt(5 * n * n)) // 2
    b = a + n
    return (a, b), (b, a)


def winning_move(grid, queen, blocked=frozenset()):
    """A winning move and block set for the player at ``queen``, if any.

    Scans the queen's unblocked options for a palace; moving there and
    blocking all palaces visible from it (fewer than k by definition)
    denies the opponent every winning reply.  Returns ``(move, blocks)``
    or None when every legal move is an N-position or no move exists.

    ``grid`` must contain the queen so all options are covered.
    """
    x, y = queen
    if not (0 <= x < grid.width and 0 <= y < grid.height):
        raise ValueError(
            f"grid {grid.width}x{grid.height} does not cover queen {queen}")
    if queen in blocked:
        raise ValueError(f"queen {queen} cannot share a blocked square")
    for move in queen_options(queen):
        if move in blocked:
            continue
        if grid.value(*move) < grid.k:
            blocks = frozenset(
                p for p in queen_options(move) if grid.value(*p) < grid.k)
            return move, blocks
    return None
