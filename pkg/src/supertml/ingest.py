"""Delimited-table ingestion: schema inference, typed samples, missing values.

Cell text is kept in its source lexical form (after whitespace trimming) so
that downstream rendering draws exactly the characters that appeared in the
file; "6.0" is never collapsed to "6".
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_MISSING_TOKENS = frozenset({"", "?", "NA", "na", "N/A"})

_INT_RE = re.compile(r"[+-]?\d+$")
_REAL_RE = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


class DataError(ValueError):
    """Malformed input data (ragged rows, bad schema, unknown values)."""


class ColumnKind(Enum):
    INTEGER = "Integer"
    REAL = "Real"
    CATEGORICAL = "Categorical"


MISSING = None  # sentinel: a CellValue is either `str` (present) or None


@dataclass(frozen=True)
class TabularSchema:
    """Column names/kinds, which column is the label, what counts as missing."""

    columns: tuple[tuple[str, ColumnKind], ...]
    label_column: int
    missing_tokens: frozenset[str] = DEFAULT_MISSING_TOKENS

    def __post_init__(self):
        names = [n for n, _ in self.columns]
        if len(set(names)) != len(names):
            raise DataError("duplicate column names: %s"
                            % sorted({n for n in names if names.count(n) > 1}))
        if not 0 <= self.label_column < len(self.columns):
            raise DataError("label_column %d out of range for %d columns"
                            % (self.label_column, len(self.columns)))

    @property
    def feature_columns(self) -> tuple[tuple[str, ColumnKind], ...]:
        return tuple(c for i, c in enumerate(self.columns) if i != self.label_column)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.feature_columns)

    @property
    def n_features(self) -> int:
        return len(self.columns) - 1

    def to_json(self) -> str:
        doc = {
            "columns": [{"name": n, "kind": k.value} for n, k in self.columns],
            "label_column": self.label_column,
            "missing_tokens": sorted(self.missing_tokens),
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "TabularSchema":
        doc = json.loads(text)
        try:
            cols = tuple((c["name"], ColumnKind(c["kind"])) for c in doc["columns"])
            return cls(cols, doc["label_column"],
                       frozenset(doc.get("missing_tokens", DEFAULT_MISSING_TOKENS)))
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError("bad schema document: %s" % exc) from exc


@dataclass(frozen=True)
class Sample:
    """One table row: feature cell values (source order) plus its label."""

    values: tuple[str | None, ...]
    label: str


def _cell_kind(text: str) -> ColumnKind:
    if _INT_RE.match(text):
        return ColumnKind.INTEGER
    if _REAL_RE.match(text):
        return ColumnKind.REAL
    return ColumnKind.CATEGORICAL


def infer_schema(rows: Sequence[Sequence[str]],
                 label_column: int,
                 missing_tokens: Iterable[str] = DEFAULT_MISSING_TOKENS,
                 names: Sequence[str] | None = None) -> TabularSchema:
    """Infer per-column kinds from data rows (header not included).

    A column is Integer iff every non-missing cell parses as a base-10
    integer, Real iff every non-missing cell parses as a decimal and at
    least one is non-integer, Categorical otherwise. Cells equal to a
    missing token are excluded from inference.
    """
    missing = frozenset(missing_tokens)
    rows = list(rows)
    if not rows:
        raise DataError("cannot infer a schema from zero rows")
    arity = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != arity:
            raise DataError("ragged input: row %d has %d cells, expected %d"
                            % (i, len(row), arity))
    if not 0 <= label_column < arity:
        raise DataError("label_column %d out of range for arity %d" % (label_column, arity))
    if names is None:
        names = ["F%d" % (i + 1) for i in range(arity)]
    elif len(names) != arity:
        raise DataError("got %d column names for arity %d" % (len(names), arity))

    kinds = []
    for c in range(arity):
        seen = {ColumnKind.INTEGER: 0, ColumnKind.REAL: 0, ColumnKind.CATEGORICAL: 0}
        for row in rows:
            cell = row[c].strip()
            if cell in missing:
                continue
            seen[_cell_kind(cell)] += 1
        if seen[ColumnKind.CATEGORICAL] or not (seen[ColumnKind.INTEGER] or seen[ColumnKind.REAL]):
            kinds.append(ColumnKind.CATEGORICAL)
        elif seen[ColumnKind.REAL]:
            kinds.append(ColumnKind.REAL)
        else:
            kinds.append(ColumnKind.INTEGER)
    return TabularSchema(tuple(zip(names, kinds)), label_column, missing)


def read_rows(path: str | Path, delimiter: str = ",",
              header: bool = True) -> tuple[list[str] | None, list[list[str]]]:
    """Read a delimited file into (header_names_or_None, data_rows)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DataError("%s: not valid UTF-8 (%s)" % (path, exc)) from exc
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    rows = [row for row in reader if row]
    if not rows:
        return (None, [])
    if header:
        return ([c.strip() for c in rows[0]], rows[1:])
    return (None, rows)


def parse_dataset(path: str | Path, schema: TabularSchema,
                  delimiter: str = ",", header: bool = True) -> list[Sample]:
    """Parse a delimited file into Samples under an already-known schema."""
    _, rows = read_rows(path, delimiter=delimiter, header=header)
    return parse_rows(rows, schema)


def parse_rows(rows: Sequence[Sequence[str]], schema: TabularSchema) -> list[Sample]:
    arity = len(schema.columns)
    samples = []
    for i, row in enumerate(rows):
        if len(row) != arity:
            raise DataError("row %d has %d cells, schema expects %d" % (i, len(row), arity))
        values = []
        label = ""
        for c, raw in enumerate(row):
            cell = raw.strip()
            if c == schema.label_column:
                label = cell
            else:
                values.append(MISSING if cell in schema.missing_tokens else cell)
        samples.append(Sample(tuple(values), label))
    return samples


def split_samples(samples: Sequence[Sample], train_fraction: float,
                  seed: int) -> tuple[list[int], list[int]]:
    """Seeded shuffle split; returns (train_indices, test_indices).

    The source gives no train/test split for Iris or Wine, so the split is
    an explicit, reproducible parameter rather than a baked-in choice.
    """
    import random

    if not 0.0 < train_fraction < 1.0:
        raise DataError("train fraction must be in (0, 1), got %r" % train_fraction)
    order = list(range(len(samples)))
    random.Random(seed).shuffle(order)
    cut = int(round(len(order) * train_fraction))
    return sorted(order[:cut]), sorted(order[cut:])
