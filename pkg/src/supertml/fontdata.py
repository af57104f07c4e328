"""Frozen bitmap glyph data for the embedded fixed-advance font.

Reference glyphs are 10x19 binary bitmaps covering printable ASCII
(codepoints 32-126). Each glyph is a tuple of 19 row bitmasks; bit i of a
mask is column i (leftmost column = bit 0). Regenerate with
tools/bake_font.py; do not edit by hand."""

GLYPH_WIDTH = 10
GLYPH_HEIGHT = 19

REPLACEMENT = (0, 0, 510, 258, 258, 258, 258, 258, 258, 258, 258, 258, 258, 258, 258, 258, 510, 0, 0)

GLYPHS = {
    32: (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # ' '
    33: (0, 0, 0, 48, 48, 48, 48, 48, 48, 48, 16, 0, 0, 48, 48, 0, 0, 0, 0),  # '!'
    34: (0, 0, 0, 72, 72, 72, 72, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # '"'
    35: (0, 0, 0, 0, 144, 144, 152, 1022, 72, 72, 76, 511, 36, 36, 38, 0, 0, 0, 0),  # '#'
    36: (0, 0, 0, 0, 0, 120, 132, 4, 4, 60, 240, 384, 384, 132, 120, 0, 0, 0, 0),  # '$'
    37: (0, 0, 0, 14, 18, 17, 18, 398, 96, 24, 230, 288, 272, 288, 224, 0, 0, 0, 0),  # '%'
    38: (0, 0, 0, 120, 12, 4, 12, 12, 28, 306, 290, 355, 450, 198, 444, 0, 0, 0, 0),  # '&'
    39: (0, 0, 0, 16, 16, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # "'"
    40: (0, 0, 0, 96, 32, 48, 16, 16, 24, 24, 24, 24, 16, 16, 48, 32, 96, 0, 0),  # '('
    41: (0, 0, 0, 8, 24, 16, 48, 48, 32, 32, 32, 32, 48, 48, 16, 24, 8, 0, 0),  # ')'
    42: (0, 0, 0, 16, 16, 148, 120, 120, 148, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0),  # '*'
    43: (0, 0, 0, 0, 0, 0, 0, 16, 16, 16, 510, 16, 16, 16, 0, 0, 0, 0, 0),  # '+'
    44: (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 48, 48, 48, 16, 24, 0),  # ','
    45: (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 120, 0, 0, 0, 0, 0, 0, 0, 0),  # '-'
    46: (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 48, 48, 0, 0, 0, 0),  # '.'
    47: (0, 0, 0, 128, 192, 64, 96, 32, 48, 16, 24, 8, 12, 4, 4, 6, 0, 0, 0),  # '/'
    48: (0, 0, 0, 120, 204, 132, 134, 390, 438, 438, 390, 134, 132, 204, 120, 0, 0, 0, 0),  # '0'
    49: (0, 0, 0, 56, 36, 32, 32, 32, 32, 32, 32, 32, 32, 32, 508, 0, 0, 0, 0),  # '1'
    50: (0, 0, 0, 60, 198, 192, 128, 192, 192, 96, 48, 24, 12, 4, 254, 0, 0, 0, 0),  # '2'
    51: (0, 0, 0, 56, 192, 192, 128, 192, 120, 192, 128, 128, 128, 194, 124, 0, 0, 0, 0),  # '3'
    52: (0, 0, 0, 96, 96, 80, 88, 72, 68, 70, 66, 510, 64, 64, 64, 0, 0, 0, 0),  # '4'
    53: (0, 0, 0, 252, 4, 4, 4, 60, 192, 192, 128, 128, 192, 194, 60, 0, 0, 0, 0),  # '5'
    54: (0, 0, 0, 120, 140, 4, 6, 126, 206, 134, 390, 390, 132, 204, 120, 0, 0, 0, 0),  # '6'
    55: (0, 0, 0, 254, 192, 192, 64, 96, 96, 32, 48, 48, 16, 24, 8, 0, 0, 0, 0),  # '7'
    56: (0, 0, 0, 120, 204, 134, 134, 196, 120, 196, 134, 390, 134, 196, 120, 0, 0, 0, 0),  # '8'
    57: (0, 0, 0, 120, 196, 134, 134, 134, 390, 452, 184, 128, 128, 68, 56, 0, 0, 0, 0),  # '9'
    58: (0, 0, 0, 0, 0, 0, 0, 48, 48, 0, 0, 0, 0, 48, 48, 0, 0, 0, 0),  # ':'
    59: (0, 0, 0, 0, 0, 0, 0, 48, 48, 0, 0, 0, 0, 48, 48, 48, 16, 24, 0),  # ';'
    60: (0, 0, 0, 0, 0, 0, 256, 480, 56, 14, 14, 56, 480, 256, 0, 0, 0, 0, 0),  # '<'
    61: (0, 0, 0, 0, 0, 0, 0, 0, 510, 0, 0, 510, 0, 0, 0, 0, 0, 0, 0),  # '='
    62: (0, 0, 0, 0, 0, 0, 2, 14, 120, 448, 448, 120, 14, 2, 0, 0, 0, 0, 0),  # '>'
    63: (0, 0, 0, 120, 196, 192, 192, 96, 32, 48, 16, 16, 0, 16, 16, 0, 0, 0, 0),  # '?'
    64: (0, 0, 0, 0, 120, 396, 262, 482, 402, 281, 265, 265, 283, 402, 482, 6, 12, 240, 0),  # '@'
    65: (0, 0, 0, 48, 56, 120, 104, 72, 76, 204, 196, 254, 390, 386, 259, 0, 0, 0, 0),  # 'A'
    66: (0, 0, 0, 126, 198, 134, 134, 198, 126, 198, 390, 390, 390, 198, 126, 0, 0, 0, 0),  # 'B'
    67: (0, 0, 0, 240, 140, 4, 6, 6, 6, 6, 6, 6, 4, 140, 240, 0, 0, 0, 0),  # 'C'
    68: (0, 0, 0, 62, 102, 198, 134, 390, 390, 390, 390, 134, 198, 102, 62, 0, 0, 0, 0),  # 'D'
    69: (0, 0, 0, 252, 4, 4, 4, 4, 252, 4, 4, 4, 4, 4, 508, 0, 0, 0, 0),  # 'E'
    70: (0, 0, 0, 508, 4, 4, 4, 4, 252, 4, 4, 4, 4, 4, 4, 0, 0, 0, 0),  # 'F'
    71: (0, 0, 0, 120, 140, 4, 6, 6, 2, 482, 390, 390, 390, 396, 248, 0, 0, 0, 0),  # 'G'
    72: (0, 0, 0, 390, 390, 390, 390, 390, 510, 390, 390, 390, 390, 390, 390, 0, 0, 0, 0),  # 'H'
    73: (0, 0, 0, 252, 48, 48, 48, 48, 48, 48, 48, 48, 48, 48, 252, 0, 0, 0, 0),  # 'I'
    74: (0, 0, 0, 120, 64, 64, 64, 64, 64, 64, 64, 64, 64, 98, 60, 0, 0, 0, 0),  # 'J'
    75: (0, 0, 0, 390, 198, 102, 54, 30, 30, 54, 102, 102, 198, 390, 390, 0, 0, 0, 0),  # 'K'
    76: (0, 0, 0, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 508, 0, 0, 0, 0),  # 'L'
    77: (0, 0, 0, 390, 454, 462, 458, 490, 442, 434, 434, 386, 386, 386, 386, 0, 0, 0, 0),  # 'M'
    78: (0, 0, 0, 390, 398, 398, 398, 406, 406, 438, 422, 422, 454, 454, 454, 0, 0, 0, 0),  # 'N'
    79: (0, 0, 0, 120, 204, 134, 134, 390, 390, 390, 390, 134, 134, 204, 120, 0, 0, 0, 0),  # 'O'
    80: (0, 0, 0, 124, 196, 388, 388, 388, 196, 124, 4, 4, 4, 4, 4, 0, 0, 0, 0),  # 'P'
    81: (0, 0, 0, 120, 204, 134, 134, 390, 390, 390, 390, 134, 134, 204, 120, 64, 192, 0, 0),  # 'Q'
    82: (0, 0, 0, 126, 198, 198, 134, 134, 198, 126, 70, 198, 134, 390, 262, 0, 0, 0, 0),  # 'R'
    83: (0, 0, 0, 120, 196, 6, 6, 6, 60, 240, 128, 384, 128, 198, 124, 0, 0, 0, 0),  # 'S'
    84: (0, 0, 0, 511, 48, 48, 48, 48, 48, 48, 48, 48, 48, 48, 48, 0, 0, 0, 0),  # 'T'
    85: (0, 0, 0, 134, 134, 134, 134, 134, 134, 134, 134, 134, 134, 196, 120, 0, 0, 0, 0),  # 'U'
    86: (0, 0, 0, 386, 386, 134, 134, 196, 196, 76, 72, 104, 56, 56, 48, 0, 0, 0, 0),  # 'V'
    87: (0, 0, 0, 771, 259, 259, 306, 306, 442, 426, 490, 206, 206, 204, 196, 0, 0, 0, 0),  # 'W'
    88: (0, 0, 0, 390, 132, 204, 72, 56, 48, 48, 120, 76, 196, 390, 259, 0, 0, 0, 0),  # 'X'
    89: (0, 0, 0, 386, 134, 196, 76, 104, 56, 48, 48, 48, 48, 48, 48, 0, 0, 0, 0),  # 'Y'
    90: (0, 0, 0, 510, 384, 192, 192, 96, 48, 48, 24, 8, 12, 6, 510, 0, 0, 0, 0),  # 'Z'
    91: (0, 0, 0, 112, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 112, 0, 0),  # '['
    92: (0, 0, 0, 6, 4, 4, 12, 8, 24, 16, 48, 32, 96, 64, 192, 128, 0, 0, 0),  # '\\'
    93: (0, 0, 0, 56, 32, 32, 32, 32, 32, 32, 32, 32, 32, 32, 32, 32, 56, 0, 0),  # ']'
    94: (0, 0, 0, 48, 120, 196, 386, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # '^'
    95: (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1023),  # '_'
    96: (0, 0, 8, 24, 48, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # '`'
    97: (0, 0, 0, 0, 0, 0, 120, 196, 128, 248, 132, 134, 198, 198, 188, 0, 0, 0, 0),  # 'a'
    98: (0, 0, 0, 4, 4, 4, 116, 204, 132, 388, 388, 388, 132, 204, 116, 0, 0, 0, 0),  # 'b'
    99: (0, 0, 0, 0, 0, 0, 240, 12, 4, 4, 4, 4, 4, 12, 240, 0, 0, 0, 0),  # 'c'
    100: (0, 0, 0, 128, 128, 128, 184, 196, 198, 134, 134, 134, 198, 196, 184, 0, 0, 0, 0),  # 'd'
    101: (0, 0, 0, 0, 0, 0, 120, 204, 134, 390, 510, 6, 6, 140, 120, 0, 0, 0, 0),  # 'e'
    102: (0, 0, 0, 224, 48, 16, 252, 16, 16, 16, 16, 16, 16, 16, 16, 0, 0, 0, 0),  # 'f'
    103: (0, 0, 0, 0, 0, 0, 184, 196, 198, 134, 134, 134, 198, 196, 184, 128, 196, 120, 0),  # 'g'
    104: (0, 0, 0, 4, 4, 4, 116, 204, 132, 132, 132, 132, 132, 132, 132, 0, 0, 0, 0),  # 'h'
    105: (0, 0, 0, 48, 48, 0, 60, 48, 48, 48, 48, 48, 48, 48, 510, 0, 0, 0, 0),  # 'i'
    106: (0, 0, 0, 32, 32, 0, 60, 32, 32, 32, 32, 32, 32, 32, 32, 32, 48, 30, 0),  # 'j'
    107: (0, 0, 0, 4, 4, 4, 132, 68, 36, 60, 60, 100, 196, 132, 388, 0, 0, 0, 0),  # 'k'
    108: (0, 0, 0, 30, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 224, 0, 0, 0, 0),  # 'l'
    109: (0, 0, 0, 0, 0, 0, 222, 434, 306, 306, 306, 306, 306, 306, 306, 0, 0, 0, 0),  # 'm'
    110: (0, 0, 0, 0, 0, 0, 116, 204, 132, 132, 132, 132, 132, 132, 132, 0, 0, 0, 0),  # 'n'
    111: (0, 0, 0, 0, 0, 0, 120, 204, 134, 134, 390, 134, 134, 204, 120, 0, 0, 0, 0),  # 'o'
    112: (0, 0, 0, 0, 0, 0, 118, 206, 134, 390, 390, 390, 134, 206, 118, 6, 6, 6, 0),  # 'p'
    113: (0, 0, 0, 0, 0, 0, 184, 204, 198, 134, 134, 134, 198, 204, 184, 128, 128, 128, 0),  # 'q'
    114: (0, 0, 0, 0, 0, 0, 232, 312, 24, 8, 8, 8, 8, 8, 8, 0, 0, 0, 0),  # 'r'
    115: (0, 0, 0, 0, 0, 0, 120, 12, 4, 12, 120, 192, 128, 196, 120, 0, 0, 0, 0),  # 's'
    116: (0, 0, 0, 0, 24, 24, 254, 24, 24, 24, 24, 24, 24, 16, 240, 0, 0, 0, 0),  # 't'
    117: (0, 0, 0, 0, 0, 0, 132, 132, 132, 132, 132, 132, 132, 204, 184, 0, 0, 0, 0),  # 'u'
    118: (0, 0, 0, 0, 0, 0, 386, 134, 132, 196, 76, 72, 104, 56, 48, 0, 0, 0, 0),  # 'v'
    119: (0, 0, 0, 0, 0, 0, 771, 259, 258, 434, 434, 174, 238, 204, 204, 0, 0, 0, 0),  # 'w'
    120: (0, 0, 0, 0, 0, 0, 134, 204, 104, 56, 48, 56, 76, 196, 390, 0, 0, 0, 0),  # 'x'
    121: (0, 0, 0, 0, 0, 0, 390, 134, 132, 204, 72, 104, 120, 48, 48, 16, 24, 14, 0),  # 'y'
    122: (0, 0, 0, 0, 0, 0, 252, 192, 96, 96, 48, 24, 12, 4, 252, 0, 0, 0, 0),  # 'z'
    123: (0, 0, 0, 224, 48, 48, 48, 48, 48, 16, 28, 16, 48, 48, 48, 48, 48, 224, 0),  # '{'
    124: (0, 0, 0, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16),  # '|'
    125: (0, 0, 0, 28, 16, 16, 16, 16, 48, 48, 224, 48, 48, 16, 16, 16, 16, 28, 0),  # '}'
    126: (0, 0, 0, 0, 0, 0, 0, 0, 0, 286, 224, 0, 0, 0, 0, 0, 0, 0, 0),  # '~'
}
