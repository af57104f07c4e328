"""Per-feature importance scores for variant-font planning.

The faithful route is loading scores produced by an external model (the
gradient-boosting route); the built-in estimator is a dependency-free
mutual-information fallback so variant-font planning always has something
to consume. Downstream only ever uses the ordering, never the magnitudes.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .ingest import MISSING, ColumnKind, DataError, Sample, TabularSchema

N_BINS = 10  # equal-frequency bins for numeric features


@dataclass(frozen=True)
class ImportanceVector:
    scores: tuple[float, ...]
    source: str  # "external:<path>" or "builtin:<method>"

    def __post_init__(self):
        if not self.scores:
            raise DataError("importance vector is empty")
        for i, s in enumerate(self.scores):
            if not math.isfinite(s) or s < 0:
                raise DataError("importance %d is %r; must be finite and >= 0" % (i, s))
        if not any(s > 0 for s in self.scores):
            raise DataError("all importance scores are zero")


def load_importance(path: str | Path, schema: TabularSchema) -> ImportanceVector:
    """Read {feature name: score} from JSON or two-column CSV, in schema order."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise DataError("importance JSON must be an object of name: score")
        by_name = {str(k): float(v) for k, v in doc.items()}
    else:
        by_name = {}
        for row in csv.reader(text.splitlines()):
            if not row:
                continue
            if len(row) != 2:
                raise DataError("importance CSV rows must be name,score; got %r" % row)
            try:
                by_name[row[0].strip()] = float(row[1])
            except ValueError:
                if by_name:
                    raise DataError("bad score %r for %r" % (row[1], row[0]))
                continue  # tolerate a single header line

    scores = []
    for name in schema.feature_names:
        if name not in by_name:
            raise DataError("importance file %s has no score for feature %r" % (path, name))
        scores.append(by_name.pop(name))
    if by_name:
        raise DataError("importance file names unknown features: %s" % sorted(by_name))
    return ImportanceVector(tuple(scores), "external:%s" % path)


def _discretize(column: list[str | None], kind: ColumnKind) -> np.ndarray:
    """Map one feature column to small integer codes; Missing is its own code."""
    if kind is ColumnKind.CATEGORICAL:
        levels = sorted({v for v in column if v is not MISSING})
        code = {v: i for i, v in enumerate(levels)}
        return np.array([len(levels) if v is MISSING else code[v] for v in column])

    vals = np.array([float(v) if v is not MISSING else np.nan for v in column])
    present = ~np.isnan(vals)
    codes = np.full(len(vals), N_BINS, dtype=int)  # missing bin
    if present.any():
        qs = np.quantile(vals[present], np.linspace(0, 1, N_BINS + 1)[1:-1])
        codes[present] = np.searchsorted(qs, vals[present], side="right")
    return codes


def _mutual_information(x: np.ndarray, y: np.ndarray) -> float:
    """MI in nats from the joint contingency table."""
    n = len(x)
    joint = {}
    for a, b in zip(x.tolist(), y.tolist()):
        joint[(a, b)] = joint.get((a, b), 0) + 1
    px, py = {}, {}
    for (a, b), c in joint.items():
        px[a] = px.get(a, 0) + c
        py[b] = py.get(b, 0) + c
    mi = 0.0
    for (a, b) in sorted(joint):  # fixed order: row permutation cannot move the sum
        c = joint[(a, b)]
        mi += (c / n) * math.log(c * n / (px[a] * py[b]))
    return max(0.0, mi)


def estimate_importance(samples: Sequence[Sample], schema: TabularSchema) -> ImportanceVector:
    """Built-in estimator: MI between each discretized feature and the label.

    Deterministic given the fixed equal-frequency binning; a dataset where
    no feature carries any information comes back all-equal rather than
    erroring, so planning still works.
    """
    if not samples:
        raise DataError("cannot estimate importance from zero samples")
    labels = sorted({s.label for s in samples})
    if len(labels) < 2:
        raise DataError("importance estimation needs >= 2 distinct labels")
    label_code = {lab: i for i, lab in enumerate(labels)}
    y = np.array([label_code[s.label] for s in samples])

    scores = []
    for j, (_, kind) in enumerate(schema.feature_columns):
        col = [s.values[j] for s in samples]
        scores.append(_mutual_information(_discretize(col, kind), y))
    if not any(s > 0 for s in scores):
        scores = [1.0] * len(scores)  # zero-information data: treat all features equally
    return ImportanceVector(tuple(scores), "builtin:mutual_information")


def write_importance(vec: ImportanceVector, schema: TabularSchema, path: str | Path) -> None:
    doc = {name: score for name, score in zip(schema.feature_names, vec.scores)}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
