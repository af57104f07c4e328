"""Generate the committed golden images under tests/golden/.

Run from the repo root after any intentional change to fonts, layout, or
rendering, then review the images by eye before committing.
"""
from pathlib import Path

from supertml import (CanvasSpec, FormatOptions, Sample, infer_schema,
                      plan_equal_font, render_sample, write_png)
from supertml.formatting import char_budgets
from supertml.ingest import MISSING

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden"


def weather():
    rows = [["blue", "55", "70", "17", "Sunny"]]
    schema = infer_schema(rows, 4, names=["F1", "F2", "F3", "F4", "label"])
    sample = Sample(("blue", "55", MISSING, "17"), "Sunny")
    opts = FormatOptions()
    budgets = char_budgets([sample], schema, opts)
    plan = plan_equal_font(4, budgets, CanvasSpec(224))
    return render_sample(sample, plan, schema, opts)


def iris_virginica():
    rows = [["6.0", "2.2", "5.0", "1.5", "Iris-virginica"]]
    schema = infer_schema(rows, 4)
    sample = Sample(("6.0", "2.2", "5.0", "1.5"), "Iris-virginica")
    plan = plan_equal_font(4, [3, 3, 3, 3], CanvasSpec(224))
    return render_sample(sample, plan, schema, FormatOptions())


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write_png(OUT / "weather_sunny.png", weather().pixels)
    write_png(OUT / "iris_virginica.png", iris_virginica().pixels)
    print("wrote goldens to", OUT)
