"""Rasterize formatted feature strings into their planned cells."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .font import GlyphFont, default_font
from .formatting import FormatOptions, TruncationCounter, format_sample_values
from .ingest import ColumnKind, DataError, Sample, TabularSchema
from .layout import CellSpec, LayoutPlan


class RenderError(DataError):
    """Text does not fit its planned cell; plans and budgets are out of sync."""


@dataclass
class RasterImage:
    """Single-channel 8-bit image; pixels[y, x]."""

    pixels: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self):
        if self.pixels.ndim != 2 or self.pixels.dtype != np.uint8:
            raise ValueError("pixels must be a 2-D uint8 array")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def blank(cls, width: int, height: int, value: int) -> "RasterImage":
        return cls(np.full((height, width), value, dtype=np.uint8))

    def copy(self) -> "RasterImage":
        return RasterImage(self.pixels.copy())


def render_text(canvas: RasterImage, cell: CellSpec, s: str, font: GlyphFont,
                foreground: int = 0) -> None:
    """Draw s left-to-right from the cell's top-left corner, in place.

    Wraps onto further lines while the cell has vertical room; raises rather
    than clipping when text would run past the cell in either direction.
    """
    if not s:
        return
    f = cell.font_size
    adv = font.advance(f)
    per_line = cell.width // adv
    if per_line < 1:
        raise RenderError("cell for feature %d is narrower than one glyph"
                          % cell.feature_index)
    lines = [s[i:i + per_line] for i in range(0, len(s), per_line)]
    if len(lines) * f > cell.height:
        raise RenderError(
            "text %r (%d chars) overflows cell for feature %d (%dx%d at font %d)"
            % (s, len(s), cell.feature_index, cell.width, cell.height, f))
    for row, line in enumerate(lines):
        y = cell.y + row * f
        for col, ch in enumerate(line):
            _blit(canvas, font.glyph(ch, f), cell.x + col * adv, y, foreground)


def render_sew(canvas: RasterImage, cell: CellSpec, word: str, font: GlyphFont,
               foreground: int = 0) -> None:
    """Draw word as a g x g character grid filling the square cell, g = ceil(sqrt(len)).

    Every word gets the same square footprint regardless of its length.
    """
    if not word:
        raise RenderError("SEW rendering needs a non-empty word")
    if cell.width != cell.height:
        raise RenderError("SEW cell for feature %d is not square" % cell.feature_index)
    g = math.ceil(math.sqrt(len(word)))
    char_size = cell.width // g
    if char_size < 1:
        raise RenderError("SEW cell too small for %d-char word" % len(word))
    adv = font.advance(char_size)
    for k, ch in enumerate(word):
        row, col = divmod(k, g)
        x = cell.x + col * char_size + (char_size - adv) // 2
        y = cell.y + row * char_size
        _blit(canvas, font.glyph(ch, char_size), x, y, foreground)


def _blit(canvas: RasterImage, glyph: np.ndarray, x: int, y: int, value: int) -> None:
    h, w = glyph.shape
    region = canvas.pixels[y:y + h, x:x + w]
    if region.shape != glyph.shape:
        raise RenderError("glyph at (%d,%d) exceeds canvas bounds" % (x, y))
    region[glyph] = value


def render_sample(sample: Sample, plan: LayoutPlan, schema: TabularSchema,
                  opts: FormatOptions, font: GlyphFont | None = None,
                  truncations: TruncationCounter | None = None) -> RasterImage:
    """Render one sample onto a fresh canvas. Pure: same inputs, same bytes."""
    font = font or default_font()
    if len(sample.values) != len(plan.cells):
        raise DataError("sample has %d features, plan has %d cells"
                        % (len(sample.values), len(plan.cells)))
    texts = format_sample_values(sample.values, schema, opts, truncations)
    canvas = RasterImage.blank(plan.canvas.side, plan.canvas.side, plan.canvas.background)
    fg = plan.canvas.foreground
    for i, text in enumerate(texts):
        cell = plan.cell_for(i)
        try:
            if cell.sew and text:
                render_sew(canvas, cell, text, font, fg)
            else:
                render_text(canvas, cell, text, font, fg)
        except RenderError as exc:
            raise RenderError("feature %d (%s): %s"
                              % (i, schema.feature_names[i], exc)) from exc
    return canvas


def sew_feature_indices(schema: TabularSchema) -> frozenset[int]:
    """Feature indices that render squared: categorical columns only."""
    return frozenset(i for i, (_, kind) in enumerate(schema.feature_columns)
                     if kind is ColumnKind.CATEGORICAL)
