"""Score feature relevance against the label with the builtin estimator.

Run: python3 demos/04_importance.py
"""

import random

from supertml import estimate_importance, infer_schema, parse_rows

rng = random.Random(0)
rows = []
for _ in range(400):
    informative = rng.gauss(0, 1)
    noise = rng.gauss(0, 1)
    label = "pos" if informative > 0 else "neg"
    rows.append([f"{informative:.3f}", f"{noise:.3f}",
                 rng.choice("abc"), label])

schema = infer_schema(rows, label_column=3,
                      names=["signal", "noise", "junk", "y"])
vec = estimate_importance(parse_rows(rows, schema), schema)

for name, score in zip(schema.feature_names, vec.scores):
    print(f"{name:<8} {score:.4f}")
assert vec.scores[0] == max(vec.scores), "the informative column should win"
