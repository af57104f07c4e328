import csv
import random
from pathlib import Path

import pytest

from supertml import CanvasSpec, FormatOptions, infer_schema, parse_rows


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


@pytest.fixture(scope="session")
def iris_csv(tmp_path_factory):
    from sklearn.datasets import load_iris

    ds = load_iris()
    path = tmp_path_factory.mktemp("data") / "iris.csv"
    rows = [["%.1f" % v for v in x] + ["Iris-" + ds.target_names[t]]
            for x, t in zip(ds.data, ds.target)]
    _write_csv(path, ["sepal-length", "sepal-width", "petal-length", "petal-width",
                      "species"], rows)
    return path


@pytest.fixture(scope="session")
def wine_csv(tmp_path_factory):
    from sklearn.datasets import load_wine

    ds = load_wine()
    path = tmp_path_factory.mktemp("data") / "wine.csv"
    rows = [["%g" % v for v in x] + [ds.target_names[t]]
            for x, t in zip(ds.data, ds.target)]
    _write_csv(path, list(ds.feature_names) + ["class"], rows)
    return path


ADULT_COLUMNS = ["age", "workclass", "fnlwgt", "education", "education-num",
                 "marital-status", "occupation", "relationship", "race", "sex",
                 "capital-gain", "capital-loss", "hours-per-week",
                 "native-country", "income"]

_WORKCLASS = ["Private", "Self-emp-not-inc", "Local-gov", "State-gov", "Federal-gov"]
_EDUCATION = ["Bachelors", "HS-grad", "Masters", "Some-college", "11th", "Doctorate"]
_MARITAL = ["Married-civ-spouse", "Never-married", "Divorced", "Widowed"]
_OCCUPATION = ["Tech-support", "Craft-repair", "Sales", "Exec-managerial",
               "Prof-specialty", "Adm-clerical"]
_RELATIONSHIP = ["Husband", "Wife", "Own-child", "Not-in-family", "Unmarried"]
_RACE = ["White", "Black", "Asian-Pac-Islander", "Other"]
_COUNTRY = ["United-States", "Mexico", "Philippines", "Germany", "Canada"]


def make_adult_rows(n, seed=7):
    """Synthetic rows with the Adult dataset's shape: 14 mixed-kind feature
    columns, '?' missing values in workclass/occupation/native-country."""
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        missing_work = rng.random() < 0.06
        rows.append([
            str(rng.randint(17, 90)),
            "?" if missing_work else rng.choice(_WORKCLASS),
            str(rng.randint(12285, 1484705)),
            rng.choice(_EDUCATION),
            str(rng.randint(1, 16)),
            rng.choice(_MARITAL),
            "?" if missing_work or rng.random() < 0.01 else rng.choice(_OCCUPATION),
            rng.choice(_RELATIONSHIP),
            rng.choice(_RACE),
            rng.choice(["Male", "Female"]),
            str(rng.choice([0, 0, 0, 0, 5178, 7688, 15024])),
            str(rng.choice([0, 0, 0, 0, 1902, 1977])),
            str(rng.randint(1, 99)),
            "?" if rng.random() < 0.02 else rng.choice(_COUNTRY),
            rng.choice(["<=50K", ">50K"]),
        ])
    return rows


@pytest.fixture(scope="session")
def adult_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "adult.csv"
    _write_csv(path, ADULT_COLUMNS, make_adult_rows(1000))
    return path


def load_table(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    schema = infer_schema(data, len(header) - 1, names=header)
    return schema, parse_rows(data, schema)


@pytest.fixture(scope="session")
def iris(iris_csv):
    return load_table(iris_csv)


@pytest.fixture(scope="session")
def wine(wine_csv):
    return load_table(wine_csv)


@pytest.fixture(scope="session")
def adult(adult_csv):
    return load_table(adult_csv)


@pytest.fixture
def canvas224():
    return CanvasSpec(224)


@pytest.fixture
def fmt():
    return FormatOptions()
