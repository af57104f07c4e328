"""Embedded fixed-advance bitmap font with nearest-neighbor scaling.

All glyph geometry is integer arithmetic over the frozen reference bitmaps
in fontdata.py, so the same string at the same size renders to identical
pixels on every machine.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import fontdata

REF_WIDTH = fontdata.GLYPH_WIDTH
REF_HEIGHT = fontdata.GLYPH_HEIGHT


class GlyphFont:
    """Printable-ASCII bitmap font; unknown codepoints get a box glyph."""

    def __init__(self):
        self._ref = {}
        for cp, masks in fontdata.GLYPHS.items():
            self._ref[cp] = _unpack(masks)
        self._replacement = _unpack(fontdata.REPLACEMENT)

    @staticmethod
    def advance(font_size: int) -> int:
        """Horizontal advance in pixels for one glyph at the given size."""
        return max(1, (font_size * REF_WIDTH + REF_HEIGHT // 2) // REF_HEIGHT)

    @staticmethod
    def text_width(n_chars: int, font_size: int) -> int:
        return n_chars * GlyphFont.advance(font_size)

    def glyph(self, ch: str, font_size: int) -> np.ndarray:
        """Boolean (font_size, advance) bitmap for one character."""
        return self._scaled(ord(ch) if ord(ch) in self._ref else -1, font_size)

    @lru_cache(maxsize=4096)
    def _scaled(self, cp: int, font_size: int) -> np.ndarray:
        ref = self._replacement if cp == -1 else self._ref[cp]
        h, w = font_size, self.advance(font_size)
        ys = (np.arange(h) * REF_HEIGHT) // h
        xs = (np.arange(w) * REF_WIDTH) // w
        out = ref[np.ix_(ys, xs)]
        out.setflags(write=False)
        return out


def _unpack(masks) -> np.ndarray:
    bits = np.zeros((REF_HEIGHT, REF_WIDTH), dtype=bool)
    for r, m in enumerate(masks):
        for c in range(REF_WIDTH):
            if m >> c & 1:
                bits[r, c] = True
    return bits


_DEFAULT = None


def default_font() -> GlyphFont:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = GlyphFont()
    return _DEFAULT
