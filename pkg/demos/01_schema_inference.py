"""Infer column kinds from raw CSV rows and round-trip the schema as JSON.

Run: python3 demos/01_schema_inference.py
"""

from supertml import infer_schema, parse_rows, TabularSchema

ROWS = [
    ["14", "blue", "3.5", "?", "yes"],
    ["7", "green", "2.0", "sunny", "no"],
    ["22", "blue", "11.25", "rainy", "yes"],
]

schema = infer_schema(ROWS, label_column=4,
                      names=["age", "color", "score", "weather", "target"])
for name, kind in schema.columns:
    print(f"{name:<8} -> {kind.value}")

text = schema.to_json()
assert TabularSchema.from_json(text).columns == schema.columns
print("\nschema JSON round-trips:")
print(text)

samples = parse_rows(ROWS, schema)
print("\nfirst sample:", samples[0].values, "label:", samples[0].label)
print("the '?' became the missing sentinel:", samples[0].values[3] is None)
