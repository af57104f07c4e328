"""Plan feature cells on a canvas: uniform grid vs importance-tiered fonts.

Run: python3 demos/02_layout_planning.py
"""

from supertml import (CanvasSpec, plan_equal_font, plan_variant_font,
                      scale_plan, validate_plan)

budgets = [4, 4, 4, 4]          # widest formatted value per feature, in chars
canvas = CanvasSpec.for_side(224)

ef = plan_equal_font(4, budgets, canvas)
print("equal-font plan (font %d):" % ef.cells[0].font_size)
for c in ef.cells:
    print(f"  feature {c.feature_index}: ({c.x},{c.y}) {c.width}x{c.height}")

# Tiered fonts: the scores only matter through their relative ordering.
scores = (0.55, 0.25, 0.15, 0.05)
vf = plan_variant_font(scores, budgets, canvas)
print("\nvariant-font plan:")
for c in sorted(vf.cells, key=lambda c: -c.font_size):
    print(f"  feature {c.feature_index}: font {c.font_size} at ({c.x},{c.y})")

assert validate_plan(vf) == []   # no overlaps, everything in bounds

# Rescale an existing plan to a larger canvas without replanning.
big = scale_plan(ef, 331)
assert validate_plan(big) == []
print("\nrescaled to 331, first cell:", big.cells[0].x, big.cells[0].y,
      big.cells[0].width, big.cells[0].height)
