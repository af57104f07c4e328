"""Regenerate src/supertml/fontdata.py from DejaVu Sans Mono.

Renders printable ASCII at a 16 px reference size, thresholds to binary,
and freezes the bitmaps so rendering never depends on system fonts.
"""
from PIL import Image, ImageDraw, ImageFont
import numpy as np

FONT_PATH = "/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf"
SIZE = 16
WIDTH = 10  # ceil of the fixed advance at SIZE


def bake(out_path: str) -> None:
    font = ImageFont.truetype(FONT_PATH, size=SIZE)
    ascent, descent = font.getmetrics()
    height = ascent + descent

    glyphs = {}
    for cp in range(32, 127):
        img = Image.new("L", (WIDTH, height), 0)
        ImageDraw.Draw(img).text((0, 0), chr(cp), font=font, fill=255)
        on = np.array(img) > 127
        glyphs[cp] = [int(sum(1 << c for c in range(WIDTH) if on[r, c]))
                      for r in range(height)]

    box = []
    for r in range(height):
        if r in (2, height - 3):
            box.append(sum(1 << c for c in range(1, WIDTH - 1)))
        elif 2 < r < height - 3:
            box.append((1 << 1) | (1 << (WIDTH - 2)))
        else:
            box.append(0)

    lines = [
        '"""Frozen bitmap glyph data for the embedded fixed-advance font.',
        "",
        "Reference glyphs are %dx%d binary bitmaps covering printable ASCII" % (WIDTH, height),
        "(codepoints 32-126). Each glyph is a tuple of %d row bitmasks; bit i of a" % height,
        "mask is column i (leftmost column = bit 0). Regenerate with",
        'tools/bake_font.py; do not edit by hand."""',
        "",
        "GLYPH_WIDTH = %d" % WIDTH,
        "GLYPH_HEIGHT = %d" % height,
        "",
        "REPLACEMENT = (%s)" % ", ".join(str(m) for m in box),
        "",
        "GLYPHS = {",
    ]
    for cp, masks in glyphs.items():
        lines.append("    %d: (%s),  # %s" % (cp, ", ".join(str(m) for m in masks), repr(chr(cp))))
    lines.append("}")
    lines.append("")
    with open(out_path, "w") as fh:
        fh.write("\n".join(lines))


if __name__ == "__main__":
    bake("src/supertml/fontdata.py")
