"""Cell/font planning: every feature gets a non-overlapping cell on a square
canvas, either at one shared maximal font size (equal-font) or at sizes tiered
by feature importance (variant-font).

Both planners are pure integer arithmetic and fully deterministic; a plan
serializes to canonical JSON, so identical inputs give byte-identical plans.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .font import GlyphFont
from .ingest import DataError

MIN_FONT = 6  # below this glyphs stop being legible; planners refuse
DEFAULT_MARGIN = 2  # at side 224; scaled proportionally elsewhere
DEFAULT_FONT_TIERS = (48, 32, 24, 16, 12, 8)

EQUAL_FONT = "EqualFont"
VARIANT_FONT = "VariantFont"


class LayoutError(DataError):
    """Planner cannot satisfy the layout constraints."""


@dataclass(frozen=True)
class CanvasSpec:
    side: int
    margin: int = DEFAULT_MARGIN
    background: int = 255
    foreground: int = 0

    def __post_init__(self):
        if self.side <= 0 or 2 * self.margin >= self.side:
            raise LayoutError("bad canvas: side=%d margin=%d" % (self.side, self.margin))

    @classmethod
    def for_side(cls, side: int, **kwargs) -> "CanvasSpec":
        margin = kwargs.pop("margin", max(1, round(DEFAULT_MARGIN * side / 224)))
        return cls(side=side, margin=margin, **kwargs)


@dataclass(frozen=True)
class CellSpec:
    feature_index: int
    x: int
    y: int
    width: int
    height: int
    font_size: int
    sew: bool = False

    @property
    def x2(self) -> int:
        return self.x + self.width

    @property
    def y2(self) -> int:
        return self.y + self.height


@dataclass(frozen=True)
class LayoutPlan:
    canvas: CanvasSpec
    cells: tuple[CellSpec, ...]
    mode: str
    char_budget: tuple[int, ...]

    def cell_for(self, feature_index: int) -> CellSpec:
        for cell in self.cells:
            if cell.feature_index == feature_index:
                return cell
        raise KeyError(feature_index)

    def to_json(self) -> str:
        doc = {
            "canvas": {
                "side": self.canvas.side,
                "margin": self.canvas.margin,
                "background": self.canvas.background,
                "foreground": self.canvas.foreground,
            },
            "mode": self.mode,
            "char_budget": list(self.char_budget),
            "cells": [
                {
                    "feature_index": c.feature_index,
                    "x": c.x, "y": c.y,
                    "width": c.width, "height": c.height,
                    "font_size": c.font_size,
                    "sew": c.sew,
                }
                for c in self.cells
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "LayoutPlan":
        doc = json.loads(text)
        try:
            canvas = CanvasSpec(**doc["canvas"])
            cells = tuple(CellSpec(**c) for c in doc["cells"])
            return cls(canvas, cells, doc["mode"], tuple(doc["char_budget"]))
        except (KeyError, TypeError) as exc:
            raise DataError("bad plan document: %s" % exc) from exc


class Violation(NamedTuple):
    kind: str  # "overlap" | "bounds" | "margin" | "font"
    cells: tuple[int, ...]
    message: str


def validate_plan(plan: LayoutPlan) -> list[Violation]:
    """Check every plan invariant; empty list means the plan is sound."""
    out = []
    side = plan.canvas.side
    seen = {}
    for cell in plan.cells:
        if cell.feature_index in seen:
            out.append(Violation("overlap", (cell.feature_index,),
                                 "duplicate cell for feature %d" % cell.feature_index))
        seen[cell.feature_index] = cell
        if cell.x < 0 or cell.y < 0 or cell.x2 > side or cell.y2 > side:
            out.append(Violation("bounds", (cell.feature_index,),
                                 "cell %d exceeds %dx%d canvas" % (cell.feature_index, side, side)))
        if cell.font_size < MIN_FONT:
            out.append(Violation("font", (cell.feature_index,),
                                 "cell %d font %d below minimum %d"
                                 % (cell.feature_index, cell.font_size, MIN_FONT)))
    cells = plan.cells
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            a, b = cells[i], cells[j]
            gap_x = max(b.x - a.x2, a.x - b.x2)
            gap_y = max(b.y - a.y2, a.y - b.y2)
            pair = (a.feature_index, b.feature_index)
            if gap_x < 0 and gap_y < 0:
                out.append(Violation("overlap", pair,
                                     "cells %d and %d intersect" % pair))
            elif max(gap_x, gap_y) < plan.canvas.margin:
                out.append(Violation("margin", pair,
                                     "cells %d and %d closer than margin %d"
                                     % (pair + (plan.canvas.margin,))))
    return out


def _grid_cell_size(side: int, margin: int, rows: int, cols: int) -> tuple[int, int]:
    w = (side - (cols + 1) * margin) // cols
    h = (side - (rows + 1) * margin) // rows
    return w, h


def _max_font_for_width(budget: int, cell_w: int, cell_h: int) -> int:
    """Largest f <= cell_h with budget glyphs fitting cell_w; 0 if none >= MIN_FONT."""
    if cell_w <= 0 or cell_h <= 0:
        return 0
    f = min(cell_h, (cell_w * 19) // (10 * budget) + 2)  # near-exact seed, then settle
    while f >= MIN_FONT and GlyphFont.text_width(budget, f) > cell_w:
        f -= 1
    return f if f >= MIN_FONT else 0


def _sew_grid(budget: int) -> int:
    return max(1, math.ceil(math.sqrt(budget)))


def _shape_font(cell_w: int, cell_h: int, max_linear_budget: int,
                sew_budgets: Sequence[int]) -> int:
    """Uniform font achievable in one grid shape, or 0 if infeasible."""
    f = cell_h if cell_h >= MIN_FONT else 0
    if max_linear_budget:
        f = _max_font_for_width(max_linear_budget, cell_w, cell_h)
    if f and sew_budgets:
        square = min(cell_w, cell_h)
        for b in sew_budgets:
            if square // _sew_grid(b) < MIN_FONT:
                return 0
    return f


def plan_equal_font(n_features: int, char_budget: Sequence[int], canvas: CanvasSpec,
                    sew_features: Iterable[int] = ()) -> LayoutPlan:
    """Grid layout where every feature shares one maximal font size.

    Enumerates grid shapes (r, c) with r*c >= n and r, c <= n, keeps the
    shape admitting the largest uniform font, breaking ties toward square
    grids (min |r-c|) and then fewer rows.
    """
    sew = frozenset(sew_features)
    if n_features < 1:
        raise LayoutError("need at least one feature")
    if len(char_budget) != n_features or any(b < 1 for b in char_budget):
        raise LayoutError("char_budget must have %d entries, each >= 1" % n_features)
    bad = [i for i in sew if not 0 <= i < n_features]
    if bad:
        raise LayoutError("sew feature indices out of range: %s" % bad)

    linear_budgets = [char_budget[i] for i in range(n_features) if i not in sew]
    max_linear = max(linear_budgets) if linear_budgets else 0
    sew_budgets = sorted(char_budget[i] for i in sew)

    best = None  # (f, -|r-c| via key, r, c)
    for rows in range(1, n_features + 1):
        cols_min = math.ceil(n_features / rows)
        for cols in range(cols_min, n_features + 1):
            w, h = _grid_cell_size(canvas.side, canvas.margin, rows, cols)
            f = _shape_font(w, h, max_linear, sew_budgets)
            if not f:
                continue
            key = (f, -abs(rows - cols), -rows)
            if best is None or key > best[0]:
                best = (key, rows, cols, w, h, f)
    if best is None:
        blocking = max(range(n_features), key=lambda i: (char_budget[i], i))
        raise LayoutError(
            "no grid fits feature %d (budget %d chars) at side %d with font >= %d"
            % (blocking, char_budget[blocking], canvas.side, MIN_FONT))

    _, rows, cols, cell_w, cell_h, f = best
    cells = []
    for i in range(n_features):
        r, c = divmod(i, cols)
        x = canvas.margin + c * (cell_w + canvas.margin)
        y = canvas.margin + r * (cell_h + canvas.margin)
        if i in sew:
            square = min(cell_w, cell_h)
            cells.append(CellSpec(i, x, y, square, square, f, sew=True))
        else:
            cells.append(CellSpec(i, x, y, cell_w, cell_h, f))
    return LayoutPlan(canvas, tuple(cells), EQUAL_FONT, tuple(char_budget))


def _tier_indices(importances: Sequence[float], n_tiers: int) -> list[int]:
    """Tier per feature from the importance mass strictly above its score.

    Equal scores land in the same tier (so an all-equal vector degenerates
    to a uniform plan) and positive rescaling cannot move any feature.
    """
    total = float(sum(importances))
    tiers = []
    for s in importances:
        greater = sum(v for v in importances if v > s)
        tiers.append(min(n_tiers - 1, int(n_tiers * greater / total)))
    return tiers


@dataclass
class _FreeRect:
    x: int
    y: int
    w: int
    h: int


def plan_variant_font(importances: Sequence[float], char_budget: Sequence[int],
                      canvas: CanvasSpec,
                      font_tiers: Sequence[int] = DEFAULT_FONT_TIERS,
                      sew_features: Iterable[int] = ()) -> LayoutPlan:
    """Importance-tiered layout via deterministic guillotine packing.

    Features are placed in descending-importance order (ties by index),
    each at the font tier its importance mass earns, demoting to smaller
    tiers when space runs out. Demotion lowers the floor for everything
    after it, so importance rank is never inverted in font size.
    """
    n = len(importances)
    if n < 1 or len(char_budget) != n or any(b < 1 for b in char_budget):
        raise LayoutError("need matching importances and char budgets (>= 1 each)")
    for i, s in enumerate(importances):
        if not math.isfinite(s) or s < 0:
            raise LayoutError("importance %d is %r; scores must be finite and >= 0" % (i, s))
    if sum(importances) <= 0:
        raise LayoutError("at least one importance must be positive")
    tiers = tuple(font_tiers)
    if not tiers or any(tiers[i] <= tiers[i + 1] for i in range(len(tiers) - 1)):
        raise LayoutError("font_tiers must be non-empty and strictly descending")
    if tiers[-1] < MIN_FONT:
        raise LayoutError("smallest tier %d is below minimum font %d" % (tiers[-1], MIN_FONT))
    sew = frozenset(sew_features)

    order = sorted(range(n), key=lambda i: (-importances[i], i))
    base_tier = _tier_indices(importances, len(tiers))
    margin = canvas.margin
    free = [_FreeRect(margin, margin, canvas.side - 2 * margin, canvas.side - 2 * margin)]
    cells = []
    floor = 0

    def required(i: int, f: int) -> tuple[int, int]:
        if i in sew:
            side = _sew_grid(char_budget[i]) * f
            return side, side
        return GlyphFont.text_width(char_budget[i], f), f

    for count, i in enumerate(order):
        t = max(base_tier[i], floor)
        placed = None
        while t < len(tiers):
            w, h = required(i, tiers[t])
            placed = _place(free, w, h, margin, vertical_cut=count % 2 == 0)
            if placed:
                break
            t += 1
        if not placed:
            raise LayoutError(
                "feature %d (budget %d chars) does not fit even at font %d"
                % (i, char_budget[i], tiers[-1]))
        floor = t
        x, y, w, h = placed
        cells.append(CellSpec(i, x, y, w, h, tiers[t], sew=i in sew))

    cells.sort(key=lambda c: c.feature_index)
    return LayoutPlan(canvas, tuple(cells), VARIANT_FONT, tuple(char_budget))


def _place(free: list[_FreeRect], w: int, h: int, margin: int,
           vertical_cut: bool) -> tuple[int, int, int, int] | None:
    """Best-area-fit placement with a guillotine split of the leftovers.

    The allocation footprint pads the cell by one margin on the right and
    bottom, which is what guarantees the inter-cell gap.
    """
    need_w, need_h = w + margin, h + margin
    best = None
    for idx, r in enumerate(free):
        if need_w <= r.w and need_h <= r.h:
            key = (r.w * r.h, r.y, r.x, idx)
            if best is None or key < best[0]:
                best = (key, idx)
    if best is None:
        return None
    idx = best[1]
    r = free.pop(idx)
    if vertical_cut:
        right = _FreeRect(r.x + need_w, r.y, r.w - need_w, r.h)
        below = _FreeRect(r.x, r.y + need_h, need_w, r.h - need_h)
    else:
        right = _FreeRect(r.x + need_w, r.y, r.w - need_w, need_h)
        below = _FreeRect(r.x, r.y + need_h, r.w, r.h - need_h)
    for piece in (right, below):
        if piece.w > 0 and piece.h > 0:
            free.append(piece)
    return (r.x, r.y, w, h)


def scale_plan(plan: LayoutPlan, new_side: int) -> LayoutPlan:
    """Rescale a plan to another canvas side instead of replanning.

    Coordinates floor-scale, which preserves ordering and never shrinks a
    gap below the floor-scaled margin.
    """
    old = plan.canvas.side

    def s(v: int) -> int:
        return (v * new_side) // old

    canvas = CanvasSpec(new_side, max(1, s(plan.canvas.margin)),
                        plan.canvas.background, plan.canvas.foreground)
    cells = []
    for c in plan.cells:
        x, y = s(c.x), s(c.y)
        w, h = s(c.x2) - x, s(c.y2) - y
        f = max(MIN_FONT, (c.font_size * new_side) // old)
        cells.append(CellSpec(c.feature_index, x, y, w, h, f, sew=c.sew))
    return LayoutPlan(canvas, tuple(cells), plan.mode, plan.char_budget)
