"""Palace-number grids for blocking-queen Nim games.

Computes the P-position structure of the k-blocking queen game by two
independent routes (a direct dynamic program and a k-independent local
rule), verifies them against explicit game-tree search, and measures the
self-organized regions the grids form.
"""

from .analysis import (DiffReport, Report, SkinMeasurement, SkinReport,
                       Window, check_epaulette, check_fabric_offset,
                       check_hood, diff_grids, hood_mask, is_step_factor,
                       measure_skin, measure_threads, state_histogram,
                       substitute_steps)
from .ca import (COMPENSATION_WEIGHTS, boundary_state, local_rule,
                 reverse_states, run_ca)
from .errors import GridFormatError, ResourceLimitError, SearchLimitError
from .fixtures import window_for
from .grid import PalaceGrid, RowStream, queen_options, solve_grid
from .oracle import GameTreeSearch, winning_move, wythoff_pair
from .render import (CLASSIC_PALETTE, grid_from_bytes, grid_to_bytes,
                     load_grid, palette_color, render_mask_ppm, render_ppm,
                     save_grid)

__version__ = "0.1.0"

__all__ = [
    "CLASSIC_PALETTE", "COMPENSATION_WEIGHTS", "DiffReport",
    "GameTreeSearch", "GridFormatError", "PalaceGrid", "Report",
    "ResourceLimitError", "RowStream", "SearchLimitError",
    "SkinMeasurement", "SkinReport", "Window", "boundary_state",
    "check_epaulette", "check_fabric_offset", "check_hood", "diff_grids",
    "grid_from_bytes", "grid_to_bytes", "hood_mask", "is_step_factor",
    "load_grid", "local_rule", "measure_skin", "measure_threads",
    "palette_color", "queen_options", "render_mask_ppm", "render_ppm",
    "reverse_states", "run_ca", "save_grid", "solve_grid",
    "state_histogram", "substitute_steps", "window_for", "winning_move",
    "wythoff_pair",
]
