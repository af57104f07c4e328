"""Render one tabular row into a grayscale image, including the squared
word-in-a-grid treatment for categorical text.

Run: python3 demos/03_rendering.py  (writes demo_row.png next to it)
"""

from pathlib import Path

from supertml import (FormatOptions, infer_schema, parse_rows,
                      plan_equal_font, render_sample, sew_feature_indices,
                      write_png, CanvasSpec, char_budgets)

ROWS = [
    ["5.1", "overcast", "64", "yes"],
    ["6.0", "sunny", "17", "no"],
    ["4.4", "rain", "?", "yes"],
]
schema = infer_schema(ROWS, label_column=3,
                      names=["temp", "sky", "humidity", "play"])
samples = parse_rows(ROWS, schema)
opts = FormatOptions()

budgets = char_budgets(samples, schema, opts)
sew = sew_feature_indices(schema)            # categorical columns -> squared
print("char budgets:", budgets, "| squared features:", sorted(sew))

plan = plan_equal_font(schema.n_features, budgets, CanvasSpec.for_side(224), sew)
image = render_sample(samples[1], plan, schema, opts)

out = Path(__file__).parent / "demo_row.png"
write_png(out, image.pixels)
print("wrote", out, "-", image.pixels.shape, "min/max:",
      image.pixels.min(), image.pixels.max())
