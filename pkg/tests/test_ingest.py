import string

import pytest
from hypothesis import given, strategies as st

from supertml import (MISSING, ColumnKind, DataError, TabularSchema,
                      infer_schema, parse_dataset, parse_rows, split_samples)


class TestInferSchema:
    def test_single_integer_column(self):
        schema = infer_schema([["1"], ["2"], ["3"]], label_column=0)
        assert schema.columns[0][1] is ColumnKind.INTEGER

    def test_real_requires_one_non_integer(self):
        schema = infer_schema([["1", "x"], ["2.5", "y"]], label_column=1)
        assert schema.columns[0][1] is ColumnKind.REAL

    def test_all_integers_stay_integer(self):
        schema = infer_schema([["1", "x"], ["-42", "y"]], label_column=1)
        assert schema.columns[0][1] is ColumnKind.INTEGER

    def test_any_non_numeric_cell_makes_categorical(self):
        schema = infer_schema([["1", "x"], ["blue", "y"]], label_column=1)
        assert schema.columns[0][1] is ColumnKind.CATEGORICAL

    def test_iris_columns_all_real(self, iris):
        schema, _ = iris
        kinds = [k for _, k in schema.feature_columns]
        assert kinds == [ColumnKind.REAL] * 4

    def test_adult_mixes_integer_and_categorical(self, adult):
        schema, _ = adult
        kinds = {k for _, k in schema.feature_columns}
        assert kinds == {ColumnKind.INTEGER, ColumnKind.CATEGORICAL}

    def test_missing_tokens_excluded_from_inference(self):
        schema = infer_schema([["?", "x"], ["7", "y"]], label_column=1)
        assert schema.columns[0][1] is ColumnKind.INTEGER

    def test_all_missing_column_is_categorical(self):
        schema = infer_schema([["?", "x"], ["NA", "y"]], label_column=1)
        assert schema.columns[0][1] is ColumnKind.CATEGORICAL

    def test_ragged_rows_name_the_offender(self):
        with pytest.raises(DataError, match="row 1"):
            infer_schema([["1", "2"], ["1"]], label_column=0)

    def test_empty_input_rejected(self):
        with pytest.raises(DataError):
            infer_schema([], label_column=0)

    def test_duplicate_names_rejected(self):
        with pytest.raises(DataError, match="duplicate"):
            infer_schema([["1", "2"]], label_column=0, names=["a", "a"])

    def test_row_permutation_invariant(self):
        rows = [["1", "a", "x"], ["2.5", "b", "y"], ["?", "c", "z"]]
        a = infer_schema(rows, 2)
        b = infer_schema(rows[::-1], 2)
        assert a.columns == b.columns

    def test_all_missing_row_changes_nothing(self):
        rows = [["1", "2.5", "x"]]
        with_row = rows + [["?", "NA", "x"]]
        assert infer_schema(rows, 2).columns == infer_schema(with_row, 2).columns


class TestParse:
    def test_iris_error_analysis_row(self, iris):
        schema, samples = iris
        target = ("6.0", "2.2", "5.0", "1.5")
        hits = [s for s in samples if s.values == target]
        assert hits and hits[0].label == "Iris-virginica"

    def test_missing_cell_becomes_missing(self, adult):
        schema, samples = adult
        occ = list(schema.feature_names).index("occupation")
        assert any(s.values[occ] is MISSING for s in samples)

    def test_empty_file_after_header(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("a,b,label\n")
        schema = infer_schema([["1", "2", "x"]], 2, names=["a", "b", "label"])
        assert parse_dataset(p, schema) == []

    def test_arity_mismatch_rejected(self):
        schema = infer_schema([["1", "2", "x"]], 2)
        with pytest.raises(DataError, match="row 0"):
            parse_rows([["1", "2"]], schema)

    def test_lexical_form_preserved(self):
        schema = infer_schema([["6.0", "x"]], 1)
        samples = parse_rows([[" 6.0 ", "x"]], schema)
        assert samples[0].values[0] == "6.0"  # trimmed, never re-formatted


cell_text = st.text(alphabet=string.ascii_letters + string.digits + ".-", min_size=1,
                    max_size=8).filter(lambda s: s not in {"NA", "na", "N-A"})


@given(st.lists(st.lists(cell_text, min_size=2, max_size=6), min_size=1, max_size=20)
       .filter(lambda rows: len({len(r) for r in rows}) == 1))
def test_roundtrip_lexical_preservation(rows):
    schema = infer_schema(rows, len(rows[0]) - 1)
    for sample, row in zip(parse_rows(rows, schema), rows):
        for value, raw in zip(sample.values, row[:-1]):
            if raw.strip() not in schema.missing_tokens:
                assert value == raw.strip()


class TestSchemaJson:
    def test_roundtrip(self, iris):
        schema, _ = iris
        assert TabularSchema.from_json(schema.to_json()) == schema

    def test_bad_document(self):
        with pytest.raises(DataError):
            TabularSchema.from_json('{"columns": "nope"}')


class TestSplit:
    def test_split_is_seeded_and_partition(self, iris):
        _, samples = iris
        a = split_samples(samples, 0.8, seed=5)
        b = split_samples(samples, 0.8, seed=5)
        assert a == b
        train, test = a
        assert sorted(train + test) == list(range(150))
        assert len(train) == 120

    def test_different_seed_differs(self, iris):
        _, samples = iris
        assert split_samples(samples, 0.8, 1) != split_samples(samples, 0.8, 2)
