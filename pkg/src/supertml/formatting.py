"""Turn cell values into the exact strings that get drawn into cells."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .ingest import MISSING, ColumnKind, DataError, TabularSchema

DEFAULT_MAX_CHARS_NUMERIC = 16
DEFAULT_MAX_CHARS_CATEGORICAL = 24


@dataclass(frozen=True)
class FormatOptions:
    missing_text: str = "missing"
    max_chars_numeric: int = DEFAULT_MAX_CHARS_NUMERIC
    max_chars_categorical: int = DEFAULT_MAX_CHARS_CATEGORICAL
    # per-column {lexical value: short form}; keyed by feature name
    abbreviations: dict[str, dict[str, str]] = field(default_factory=dict)
    preserve_missing_token: bool = False

    def __post_init__(self):
        if not self.missing_text:
            raise DataError("missing_text must be non-empty")
        for col, mapping in self.abbreviations.items():
            shorts = list(mapping.values())
            if len(set(shorts)) != len(shorts):
                raise DataError("abbreviations for column %r are not distinct" % col)

    def max_chars(self, kind: ColumnKind) -> int:
        if kind is ColumnKind.CATEGORICAL:
            return self.max_chars_categorical
        return self.max_chars_numeric

    @classmethod
    def load_abbreviations(cls, path: str | Path, **kwargs) -> "FormatOptions":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise DataError("abbreviation file must be a JSON object")
        # accept both {col: {value: short}} and a flat {value: short} for all columns
        if doc and all(isinstance(v, dict) for v in doc.values()):
            abbrev = {c: dict(m) for c, m in doc.items()}
        else:
            abbrev = {"*": {str(k): str(v) for k, v in doc.items()}}
        return cls(abbreviations=abbrev, **kwargs)


class TruncationCounter:
    """Counts per-column truncations so shortened cells are never silent."""

    def __init__(self):
        self.by_column: dict[str, int] = {}

    def note(self, column: str):
        self.by_column[column] = self.by_column.get(column, 0) + 1

    @property
    def total(self) -> int:
        return sum(self.by_column.values())


def format_value(value: str | None, kind: ColumnKind, column: str,
                 opts: FormatOptions,
                 truncations: TruncationCounter | None = None,
                 source_token: str | None = None) -> str:
    """Produce the cell text for one value. Total and deterministic.

    Missing cells render opts.missing_text (or the original token when
    preserve_missing_token is set and the token is known). Present cells
    pass through an abbreviation map when one applies, then get capped at
    the per-kind character budget; any cut is tallied, never swallowed.
    """
    if value is MISSING:
        if opts.preserve_missing_token and source_token is not None:
            text = source_token
        else:
            text = opts.missing_text
    else:
        mapping = opts.abbreviations.get(column) or opts.abbreviations.get("*") or {}
        text = mapping.get(value, value)
    cap = opts.max_chars(kind)
    if len(text) > cap:
        if truncations is not None:
            truncations.note(column)
        text = text[:cap]
    return text


def char_budgets(samples, schema: TabularSchema, opts: FormatOptions) -> list[int]:
    """Per-feature planning budget: the longest formatted string that will
    actually occur, capped by the per-kind maximum."""
    budgets = []
    for j, (name, kind) in enumerate(schema.feature_columns):
        longest = len(opts.missing_text)
        for s in samples:
            longest = max(longest, len(format_value(s.values[j], kind, name, opts)))
        budgets.append(max(1, min(longest, opts.max_chars(kind))))
    return budgets


def format_sample_values(values, schema: TabularSchema, opts: FormatOptions,
                         truncations: TruncationCounter | None = None) -> list[str]:
    """Format every feature of a sample, in schema feature order."""
    cols = schema.feature_columns
    if len(values) != len(cols):
        raise DataError("sample has %d values, schema has %d features"
                        % (len(values), len(cols)))
    return [format_value(v, kind, name, opts, truncations)
            for v, (name, kind) in zip(values, cols)]
