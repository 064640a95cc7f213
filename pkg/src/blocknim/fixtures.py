"""Pinned region windows, keyed by (k, region name).

The structural regions of a grid (epaulette, fabric, arm, warp, skin
band) have no algorithmic segmentation, so the windows used by checks
were chosen once from rendered grids and recorded in ``data/windows.json``.
Each is an [x0, y0, x1, y1] half-open rectangle.

The epaulette windows sit in the below-diagonal (x < y) epaulette, where
the period vectors are (5, 1) and (4, 3) as the checks state them; the
mirror epaulette satisfies the transposed periods.  The window pinned for
k=499 is the above-diagonal epaulette instead, because the one-column
offset comparison against k=500 shifts that side's geometry.
"""

from __future__ import annotations

import json
from importlib import resources

from .analysis import Window

_cache = None


def _table():
    global _cache
    if _cache is None:
        text = resources.files("blocknim.data").joinpath(
            "windows.json").read_text("utf-8")
        _cache = json.loads(text)
    return _cache


def window_for(k, region, table=None):
    """The pinned window for game ``k`` and a named region.

    ``table`` overrides the packaged registry (same JSON layout), for
    callers supplying their own fixture file.
    """
    table = table if table is not None else _table()
    entry = table.get(str(k), {})
    if region not in entry:
        known = {kk: sorted(v) for kk, v in table.items()}
        raise KeyError(
            f"no pinned window for k={k} region={region!r}; known: {known}")
    return Window(*entry[region])


def load_table(path):
    """Read a fixture file of the same layout as the packaged one."""
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
