"""Mechanical checks and measurements on computed palace-number grids.

Covers the structured regions a grid self-organizes into: the hood (the
arithmetic triangle at the origin), the epaulettes (doubly periodic
triangles flanking it), the fabric (the chaotic diagonal region, one of
three patterns by k mod 3), the arms and their periodic skin against
outer space, and the threads of the warp.

Region boundaries are not computed here: windows are pinned per k in a
fixture file (see ``fixtures``), chosen once from rendered grids, because
no algorithmic segmentation of the regions is defined.  Checks report
pass/fail plus counters and the first offending positions.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

MAX_OFFENDERS = 100

# Fibonacci numbers with fib(1) == fib(2) == 1; index 0 unused in skin
# formulas but kept so fib[i] reads naturally.
FIB = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987]


@dataclass(frozen=True)
class Window:
    """Half-open rectangle [x0, x1) x [y0, y1) in grid coordinates."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if not (0 <= self.x0 < self.x1 and 0 <= self.y0 < self.y1):
            raise ValueError(f"degenerate window {self}")

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    def clip_to(self, grid):
        if self.x1 > grid.width or self.y1 > grid.height:
            raise ValueError(
                f"window {self} exceeds grid {grid.width}x{grid.height}")
        return self

    def as_list(self):
        return [self.x0, self.y0, self.x1, self.y1]


@dataclass
class Report:
    """Outcome of one check: pass/fail, counters, first offenders."""

    name: str
    params: dict
    passed: bool
    counters: dict = field(default_factory=dict)
    offenders: list = field(default_factory=list)

    def to_json(self, **extra):
        doc = {"operation": self.name, "params": self.params,
               "passed": self.passed, "counters": self.counters,
               "offenders": self.offenders[:MAX_OFFENDERS]}
        doc.update(extra)
        return json.dumps(doc)


def _collect_offenders(mask_bad, x_base=0, y_base=0):
    ys, xs = np.nonzero(mask_bad)
    return [[int(x) + x_base, int(y) + y_base]
            for x, y in zip(xs[:MAX_OFFENDERS], ys[:MAX_OFFENDERS])]


def hood_mask(grid):
    """Cells belonging to the hood: 2*min(x,y) + max(x,y) <= k."""
    xs = np.arange(grid.width, dtype=np.int64)[None, :]
    ys = np.arange(grid.height, dtype=np.int64)[:, None]
    return 2 * np.minimum(xs, ys) + np.maximum(xs, ys) <= grid.k


def check_hood(grid):
    """Verify hood arithmetic and the casing endpoints.

    Inside the hood the palace number is exactly 2*min(x,y) + max(x,y):
    it grows by one along the higher coordinate and by two along the
    lower one.  Cells strictly inside (< k) must be palaces.  The
    shoulder palaces along each edge must end exactly at (0, k) / (k, 0),
    and the casing corner on the diagonal sits at (k//3, k//3), exactly
    (k/3, k/3) when 3 divides k.
    """
    k = grid.k
    if grid.width <= k or grid.height <= k:
        raise ValueError(
            f"grid {grid.width}x{grid.height} does not cover the hood of k={k}")
    xs = np.arange(grid.width, dtype=np.int64)[None, :]
    ys = np.arange(grid.height, dtype=np.int64)[:, None]
    formula = 2 * np.minimum(xs, ys) + np.maximum(xs, ys)
    in_hood = formula <= k
    vals = grid.values.astype(np.int64)

    bad_formula = in_hood & (vals != formula)
    interior = formula < k
    bad_palace = interior & ~(vals < k)

    shoulder_ok = (grid.value(0, k) == k and grid.value(k, 0) == k
                   and grid.is_palace(0, k - 1) and grid.is_palace(k - 1, 0))
    nose = k // 3
    nose_ok = grid.value(nose, nose) == 3 * nose
    nose_exact = (k % 3 == 0)

    passed = (not bad_formula.any() and not bad_palace.any()
              and shoulder_ok and nose_ok)
    return Report(
        name="hood",
        params={"k": k},
        passed=bool(passed),
        counters={
            "hood_cells": int(in_hood.sum()),
            "formula_mismatches": int(bad_formula.sum()),
            "non_palace_interior": int(bad_palace.sum()),
            "shoulder": [[0, k], [k, 0]],
            "shoulder_ok": bool(shoulder_ok),
            "nose": [nose, nose],
            "nose_exact_third": nose_exact,
        },
        offenders=_collect_offenders(bad_formula | bad_palace),
    )


def check_epaulette(grid, window):
    """Verify epaulette double periodicity and the 5/3/3 census.

    Within the window, every cell whose translate stays inside must
    satisfy value(x, y) == value(x+5, y+1) and value(x, y) == value(x+4,
    y+3); cells whose translates escape are skipped and counted.  Every
    full 11-cell row segment (one fundamental domain of the period
    lattice, determinant 11) must contain k-1 five times and k, k+1
    three times each.  A window too small to test anything passes
    vacuously.
    """
    window.clip_to(grid)
    k = grid.k
    v = grid.values[window.y0:window.y1, window.x0:window.x1].astype(np.int64)
    h, w = v.shape

    per_a = np.ones((h, w), dtype=bool)
    test_a = np.zeros((h, w), dtype=bool)
    if h > 1 and w > 5:
        test_a[:h - 1, :w - 5] = True
        per_a[:h - 1, :w - 5] = v[:h - 1, :w - 5] == v[1:, 5:]
    per_b = np.ones((h, w), dtype=bool)
    test_b = np.zeros((h, w), dtype=bool)
    if h > 3 and w > 4:
        test_b[:h - 3, :w - 4] = True
        per_b[:h - 3, :w - 4] = v[:h - 3, :w - 4] == v[3:, 4:]

    bad = (test_a & ~per_a) | (test_b & ~per_b)

    def rolling_11(match):
        sums = np.cumsum(match, axis=1, dtype=np.int64)
        out = sums[:, 10:].copy()
        out[:, 1:] -= sums[:, :-11]
        return out

    census_tested = 0
    census_bad = 0
    census_first = None
    if w >= 11:
        ok = ((rolling_11(v == k - 1) == 5)
              & (rolling_11(v == k) == 3)
              & (rolling_11(v == k + 1) == 3))
        census_tested = int(ok.size)
        census_bad = census_tested - int(ok.sum())
        first = v[0, :11]
        census_first = {int(a): int(b)
                        for a, b in zip(*np.unique(first, return_counts=True))}

    testable = int((test_a | test_b).sum())
    passed = not bad.any() and census_bad == 0
    return Report(
        name="epaulette",
        params={"k": k, "window": window.as_list()},
        passed=bool(passed),
        counters={
            "testable_cells": testable,
            "skipped_cells": int(h * w) - testable,
            "period_5_1_failures": int((test_a & ~per_a).sum()),
            "period_4_3_failures": int((test_b & ~per_b).sum()),
            "census_domains": census_tested,
            "census_failures": census_bad,
            "census": census_first,
        },
        offenders=_collect_offenders(bad, window.x0, window.y0),
    )


def state_histogram(grid, region=None):
    """Exact census of states (value - k) over a region.

    ``region`` may be None (whole grid), a boolean mask of the grid's
    shape, or a predicate called as ``region(x, y)`` with index arrays.
    Returns a plain {state: count} dict; empty region gives {}.
    """
    st = grid.states()
    if region is not None:
        if callable(region):
            xs = np.arange(grid.width, dtype=np.int64)[None, :]
            ys = np.arange(grid.height, dtype=np.int64)[:, None]
            region = np.broadcast_to(region(xs, ys), st.shape)
        region = np.asarray(region, dtype=bool)
        if region.shape != st.shape:
            raise ValueError(
                f"region shape {region.shape} != grid shape {st.shape}")
        st = st[region]
    vals, counts = np.unique(st, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


@dataclass
class DiffReport:
    """Cellwise comparison of grid B against grid A shifted by an offset.

    The mask covers the overlap of A with B translated back by
    ``offset``; it is True exactly where
    ``B[y+dy, x+dx] != A[y, x] + delta``.  ``base`` is the overlap
    rectangle in A's coordinates.
    """

    offset: tuple
    delta: int
    base: Window
    mask: np.ndarray
    a_k: int
    a_values: np.ndarray

    def match_fraction(self, window=None):
        """Fraction of matching cells over the overlap or a sub-window
        (window given in A's coordinates)."""
        m = self.mask
        if window is not None:
            xs = window.x0 - self.base.x0
            ys = window.y0 - self.base.y0
            xe = window.x1 - self.base.x0
            ye = window.y1 - self.base.y0
            if not (0 <= xs < xe <= m.shape[1] and 0 <= ys < ye <= m.shape[0]):
                raise ValueError(
                    f"window {window} outside diff overlap {self.base}")
            m = m[ys:ye, xs:xe]
        return 1.0 - float(m.mean())

    def mismatches(self):
        return _collect_offenders(self.mask, self.base.x0, self.base.y0)


def diff_grids(a, b, offset, delta):
    """Compare two grids under a translation and a constant value shift.

    Grids may have different k.  Raises ValueError when the translated
    grids do not overlap.
    """
    dx, dy = offset
    x0 = max(0, -dx)
    y0 = max(0, -dy)
    x1 = min(a.width, b.width - dx)
    y1 = min(a.height, b.height - dy)
    if x0 >= x1 or y0 >= y1:
        raise ValueError(f"no overlap between grids under offset {offset}")
    av = a.values[y0:y1, x0:x1].astype(np.int64)
    bv = b.values[y0 + dy:y1 + dy, x0 + dx:x1 + dx].astype(np.int64)
    mask = bv != av + delta
    return DiffReport(offset=(dx, dy), delta=delta,
                      base=Window(x0, y0, x1, y1), mask=mask,
                      a_k=a.k, a_values=a.values[y0:y1, x0:x1])


def check_fabric_offset(grid_a, grid_b, window):
    """Verify the fabric identity between two games congruent mod 3.

    Games with k_b - k_a divisible by 3 share the fabric pattern: the
    smaller game's values, shifted by ((k_b-k_a)/3, (k_b-k_a)/3) and
    raised by k_b - k_a, reproduce the larger game's values exactly on
    the fabric window (given in the smaller game's coordinates).
    """
    ka, kb = grid_a.k, grid_b.k
    if (kb - ka) % 3 != 0:
        raise ValueError(f"k values {ka} and {kb} not congruent mod 3")
    shift = (kb - ka) // 3
    rep = diff_grids(grid_a, grid_b, (shift, shift), kb - ka)
    frac = rep.match_fraction(window)
    return Report(
        name="fabric",
        params={"k_a": ka, "k_b": kb, "offset": [shift, shift],
                "delta": kb - ka, "window": window.as_list()},
        passed=frac == 1.0,
        counters={"match_fraction": frac,
                  "cells": window.width * window.height},
        offenders=[m for m in rep.mismatches()
                   if window.x0 <= m[0] < window.x1
                   and window.y0 <= m[1] < window.y1][:MAX_OFFENDERS],
    )


def substitute_steps(seed, iterations):
    """Apply the boundary-step morphism 2 -> 23, 3 -> 233.

    ``seed`` is a string over {2, 3}; the morphism is applied symbol by
    symbol, left to right, ``iterations`` times.  From seed "2" the
    lengths run 1, 2, 5, 13, 34, ... (odd-indexed Fibonacci numbers).
    """
    rules = {"2": "23", "3": "233"}
    word = str(seed)
    if any(c not in rules for c in word):
        raise ValueError(f"seed must be over {{2,3}}, got {seed!r}")
    for _ in range(iterations):
        word = "".join(rules[c] for c in word)
    return word


def is_step_factor(sequence, max_iterations=10):
    """True iff ``sequence`` occurs as a contiguous factor of some
    iterate of the step morphism applied to "2"."""
    seq = "".join(str(s) for s in sequence)
    return seq in substitute_steps("2", max_iterations)


@dataclass
class SkinMeasurement:
    """Measured skin metrics for one thickness level.

    At level n the expected values are vertical thickness fib(2n) (one
    more on emission columns), diagonal thickness fib(2n+1), horizontal
    thickness fib(2n+2), horizontal period fib(2n+3), and vertical
    period fib(2n+1).
    """

    level: int
    x_start: int
    x_end: int
    vertical_thickness: int
    diagonal_thickness: int
    horizontal_thickness: int
    horizontal_period: int
    vertical_period: int
    step_sequence: str

    def expected(self):
        n = self.level
        return (FIB[2 * n], FIB[2 * n + 1], FIB[2 * n + 2],
                FIB[2 * n + 3], FIB[2 * n + 1])

    def matches_expected(self):
        return (self.vertical_thickness, self.diagonal_thickness,
                self.horizontal_thickness, self.horizontal_period,
                self.vertical_period) == self.expected()


@dataclass
class SkinReport:
    """Result of scanning an arm's contact band with outer space."""

    k: int
    band: Window
    levels: list
    transitions: list          # (from_level, to_level, x, extent)
    all_steps: list            # every step width seen in stable stretches
    diagnostics: list

    @property
    def found(self):
        return bool(self.levels)


def _mode(values):
    return Counter(values).most_common(1)[0][0]


def _interior_run_lengths(mask, axis_diag=False):
    """Run lengths along rows (or diagonals) that do not touch the mask
    edges, so partial runs at the window border are not counted."""
    runs = []
    if axis_diag:
        lines = [np.diagonal(mask, offset=d)
                 for d in range(-mask.shape[0] + 1, mask.shape[1])]
    else:
        lines = list(mask)
    for line in lines:
        n = len(line)
        start = None
        for i, v in enumerate(line):
            if v and start is None:
                start = i
            elif not v and start is not None:
                if start > 0:
                    runs.append(i - start)
                start = None
        # A run still open at the end touches the edge: drop it.
    return runs


def measure_skin(grid, band):
    """Measure the periodic skin along the top arm inside ``band``.

    Scanning each column from the top of the band: the outer space is the
    solid run of value exactly k; the skin is the run of P-positions
    immediately below it.  Columns are classified into thickness levels n
    by skin depth (fib(2n), or fib(2n)+1 on the columns that emit a
    vertical line); a level is accepted once it holds for two horizontal
    periods.  Per level, the horizontal period is the spacing of emission
    columns, the vertical period is the boundary drop per period, and the
    step sequence is the run-length word of the boundary over one period
    starting after an emission column.

    Returns a SkinReport; when the band shows no outer-space contact the
    report is empty with a diagnostic.
    """
    band.clip_to(grid)
    k = grid.k
    diagnostics = []
    x_lo = max(band.x0, k + 2)
    if x_lo >= band.x1:
        return SkinReport(k, band, [], [], [],
                          ["band lies before the shoulder; no skin"])
    v = grid.values[band.y0:band.y1, :]
    p = v < k

    width = band.x1
    depth = np.full(width, -1, dtype=np.int64)   # boundary y (band-relative)
    thick = np.zeros(width, dtype=np.int64)      # P-run length at boundary
    band_h = band.y1 - band.y0
    for x in range(x_lo, band.x1):
        col = v[:, x]
        if col[0] != k:
            continue                      # no outer space above: skip column
        nz = np.nonzero(col != k)[0]
        if len(nz) == 0:
            continue                      # all outer space
        t = int(nz[0])
        if not p[t, x]:
            continue                      # first non-k cell is not a palace
        e = t
        while e < band_h and p[e, x]:
            e += 1
        if e >= band_h:
            continue                      # skin run truncated by the band
        depth[x] = t
        thick[x] = e - t

    if not (depth >= 0).any():
        return SkinReport(k, band, [], [], [],
                          ["no skin found: no outer-space contact in band"])

    level_by_thick = {}
    for n in range(1, 8):
        level_by_thick[FIB[2 * n]] = n
        level_by_thick[FIB[2 * n] + 1] = n
    col_level = np.zeros(width, dtype=np.int64)
    valid = depth >= 0
    for x in range(x_lo, band.x1):
        if valid[x]:
            col_level[x] = level_by_thick.get(int(thick[x]), 0)

    # Stable stretches: runs of one level at least two periods long.
    segments = []
    x = x_lo
    while x < band.x1:
        n = col_level[x]
        if n == 0 or not valid[x]:
            x += 1
            continue
        start = x
        while x < band.x1 and valid[x] and col_level[x] == n:
            x += 1
        if x - start >= 2 * FIB[2 * n + 3]:
            segments.append((n, start, x))
    if not segments:
        return SkinReport(k, band, [], [], [],
                          ["skin present but no stable level stretch"])

    levels = []
    all_steps = []
    for n, x0, x1 in segments:
        period = FIB[2 * n + 3]
        base = int(_mode(thick[x0:x1]))
        emit = [x for x in range(x0, x1) if thick[x] == base + 1]
        gaps = [b - a for a, b in zip(emit, emit[1:])]
        h_period = int(_mode(gaps)) if gaps else 0
        p_eff = h_period if h_period else period
        drops = depth[x0 + p_eff:x1] - depth[x0:x1 - p_eff]
        v_period = int(_mode(drops.tolist())) if len(drops) else 0

        # Local skin mask for the cross-direction thicknesses.
        y_lo = int(depth[x0:x1].min())
        y_hi = int((depth[x0:x1] + thick[x0:x1]).max())
        local = np.zeros((y_hi - y_lo, x1 - x0), dtype=bool)
        for x in range(x0, x1):
            local[depth[x] - y_lo:depth[x] - y_lo + thick[x], x - x0] = True
        h_runs = _interior_run_lengths(local)
        d_runs = _interior_run_lengths(local, axis_diag=True)
        h_thick = int(_mode(h_runs)) if h_runs else 0
        d_thick = int(_mode(d_runs)) if d_runs else 0

        # Step word over one period, starting just after an emission.
        word = ""
        if emit:
            e0 = emit[len(emit) // 2]
            widths = []
            run = 1
            x = e0 + 2
            while x < x1 and sum(widths) + run < p_eff + 1:
                if depth[x] == depth[x - 1]:
                    run += 1
                else:
                    widths.append(run)
                    run = 1
                x += 1
            if sum(widths) < p_eff:
                widths.append(run)
            word = "".join(str(wd) for wd in widths)

        # Every boundary step inside the stretch, for the step-width check.
        # The first and last runs touch the stretch edges and are partial,
        # so they are not counted.
        run = 1
        first_run = True
        for x in range(x0 + 1, x1):
            if depth[x] == depth[x - 1]:
                run += 1
            else:
                if not first_run:
                    all_steps.append(run)
                first_run = False
                run = 1

        levels.append(SkinMeasurement(
            level=int(n), x_start=int(x0), x_end=int(x1),
            vertical_thickness=base, diagonal_thickness=d_thick,
            horizontal_thickness=h_thick, horizontal_period=h_period,
            vertical_period=v_period, step_sequence=word))

    transitions = []
    for prev, cur in zip(levels, levels[1:]):
        if cur.level != prev.level:
            transitions.append((prev.level, cur.level, cur.x_start,
                                cur.x_start - k))

    return SkinReport(k, band, levels, transitions, all_steps, diagnostics)


@dataclass
class Thread:
    """One tracked thread of P-positions crossing warp columns."""

    ident: int
    x_start: int
    x_end: int
    counts: list               # per-column P count
    parents: tuple = ()

    @property
    def constant_count(self):
        return len(set(self.counts)) == 1

    @property
    def count(self):
        return self.counts[0] if self.constant_count else None


def _is_fibonacci(n):
    return n in FIB


def measure_threads(grid, window):
    """Track threads of P-positions across the columns of a warp window.

    P-positions in each column are grouped into maximal vertical runs; a
    run is attached to the thread of any run in the previous column whose
    row interval it touches (within one row of slack, since threads drop
    less than one row per column).  When several threads feed one run
    they merge and the new thread records its parents.  Reports each
    thread's per-column P count, whether it is constant across its span,
    and whether that constant is a Fibonacci number.

    Evidence-gathering only: thread and window definitions are too loose
    for this to be an assertion.
    """
    window.clip_to(grid)
    p = grid.palace_mask()[window.y0:window.y1, window.x0:window.x1]
    h, w = p.shape
    threads = {}
    next_id = [0]
    merges = []

    def new_thread(x, parents=()):
        t = Thread(ident=next_id[0], x_start=x, x_end=x, counts=[],
                   parents=parents)
        threads[t.ident] = t
        next_id[0] += 1
        return t

    prev = []      # (y_start, y_end, thread_id) for the previous column
    for x in range(w):
        runs = []
        y = 0
        while y < h:
            if p[y, x]:
                y0 = y
                while y < h and p[y, x]:
                    y += 1
                runs.append((y0, y))
            else:
                y += 1
        cur = []
        for y0, y1 in runs:
            touching = [tid for (py0, py1, tid) in prev
                        if y0 <= py1 and py0 <= y1]
            touching = list(dict.fromkeys(touching))
            if not touching:
                t = new_thread(x)
            elif len(touching) == 1:
                t = threads[touching[0]]
            else:
                t = new_thread(x, parents=tuple(touching))
                parent_counts = [threads[tid].counts[-1] for tid in touching]
                merges.append({"x": x + window.x0,
                               "parents": list(touching),
                               "child": t.ident,
                               "parent_counts": parent_counts,
                               "child_count": y1 - y0,
                               "additive": sum(parent_counts) == y1 - y0})
            t.x_end = x
            t.counts.append(y1 - y0)
            cur.append((y0, y1, t.ident))
        prev = cur

    records = []
    for t in threads.values():
        if len(t.counts) < 3:
            continue            # too short to call a thread
        records.append({
            "id": t.ident,
            "x_start": t.x_start + window.x0,
            "x_end": t.x_end + window.x0,
            "columns": len(t.counts),
            "counts": t.counts,
            "constant": t.constant_count,
            "count": t.count,
            "fibonacci": _is_fibonacci(t.count) if t.constant_count else None,
            "parents": list(t.parents),
        })
    return {"window": window.as_list(), "threads": records, "merges": merges}
