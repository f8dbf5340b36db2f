"""CSV loading, missing-value handling and the bundled example datasets."""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import InsufficientDataError, ParseError

DEFAULT_NA_TOKENS = frozenset({"NA", ""})
MIN_PAIRS = 5
ORIGINAL_DATA_ENV = "DEPCORR_ORIGINAL_DATA_DIR"


@dataclass(frozen=True)
class Dataset:
    name: str
    columns: Mapping[str, np.ndarray] = field(repr=False)
    n_rows: int
    provenance: str = ""

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def missing(self, col: str) -> np.ndarray:
        return np.isnan(self.columns[col])

    def matrix(self, cols: Iterable[str] | None = None) -> np.ndarray:
        """Rows complete across ``cols`` (listwise deletion), as an n x p array."""
        cols = list(cols) if cols is not None else self.names
        for c in cols:
            _require_column(self, c)
        m = np.column_stack([self.columns[c] for c in cols])
        return m[~np.isnan(m).any(axis=1)]


@dataclass(frozen=True)
class PairedSample:
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    x_name: str
    y_name: str
    dropped: int

    @property
    def n(self) -> int:
        return int(self.x.size)


def _require_column(d: Dataset, name: str):
    if name not in d.columns:
        raise KeyError(f"no column {name!r} in dataset {d.name!r}; have {d.names}")


def load_csv(
    path,
    delimiter: str = ",",
    header: bool = True,
    na_tokens: Iterable[str] = DEFAULT_NA_TOKENS,
    name: str | None = None,
    provenance: str | None = None,
) -> Dataset:
    """Read a numeric CSV file.

    Tokens in ``na_tokens`` become missing (NaN). Any other token that does
    not parse as a number raises :class:`ParseError` naming the line and
    column. A ragged row, an empty file and a column with no values at all
    are also errors.
    """
    path = Path(path)
    na = {t.strip() for t in na_tokens}
    with open(path, newline="", encoding="utf-8-sig") as fh:
        rows = list(csv.reader(fh, delimiter=delimiter))
    rows = [(i + 1, r) for i, r in enumerate(rows) if r and any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError(f"{path} is empty")
    if header:
        _, names = rows[0]
        names = [h.strip() for h in names]
        body = rows[1:]
    else:
        names = [f"V{j + 1}" for j in range(len(rows[0][1]))]
        body = rows
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate column names in {path}", line=1)
    if not body:
        raise ParseError(f"{path} has a header but no data rows")

    width = len(names)
    data = np.empty((len(body), width))
    for i, (lineno, row) in enumerate(body):
        if len(row) != width:
            raise ParseError(f"expected {width} fields, found {len(row)}", line=lineno)
        for j, cell in enumerate(row):
            token = cell.strip()
            if token in na:
                data[i, j] = np.nan
                continue
            try:
                value = float(token)
            except ValueError:
                raise ParseError(f"non-numeric value {token!r}", line=lineno, column=names[j]) from None
            if math.isnan(value):
                raise ParseError("literal NaN token; list it in na_tokens", line=lineno, column=names[j])
            data[i, j] = value

    columns = {}
    for j, col in enumerate(names):
        values = data[:, j].copy()
        if np.isnan(values).all():
            raise ParseError("column has no values", column=col)
        values.setflags(write=False)
        columns[col] = values
    return Dataset(
        name=name or path.stem,
        columns=columns,
        n_rows=len(body),
        provenance=provenance or str(path),
    )


def write_csv(d: Dataset, path, na_token: str = "NA") -> None:
    """Write ``d`` so that :func:`load_csv` reads back identical values."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(d.names)
        for i in range(d.n_rows):
            w.writerow([na_token if np.isnan(d.columns[c][i]) else repr(float(d.columns[c][i])) for c in d.names])


def pairwise_complete(d: Dataset, col_a: str, col_b: str) -> PairedSample:
    """Observations where both columns are present, with the dropped count."""
    _require_column(d, col_a)
    _require_column(d, col_b)
    a, b = d.columns[col_a], d.columns[col_b]
    keep = ~(np.isnan(a) | np.isnan(b))
    n = int(keep.sum())
    if n < MIN_PAIRS:
        raise InsufficientDataError(
            f"only {n} complete pairs for ({col_a}, {col_b}); need at least {MIN_PAIRS}"
        )
    return PairedSample(x=a[keep], y=b[keep], x_name=col_a, y_name=col_b, dropped=d.n_rows - n)


EXAMPLES = {
    "mtcars": (
        "mtcars.csv",
        "Motor Trend 1974 road tests, 32 cars x 11 variables (R datasets::mtcars)",
    ),
    "fish_seabirds": (
        "fish_seabirds_synthetic.csv",
        "SYNTHETIC stand-in: 12 islands, skewed positive fish/seabird relation. "
        "Not the published Chagos data; supply the real file via DEPCORR_ORIGINAL_DATA_DIR.",
    ),
    "births_deaths": (
        "births_deaths_synthetic.csv",
        "SYNTHETIC stand-in: 229 countries, C-shaped birth/death rates. "
        "Not the published 2020 data; supply the real file via DEPCORR_ORIGINAL_DATA_DIR.",
    ),
}

ORIGINAL_FILES = {"fish_seabirds": "fish_seabirds.csv", "births_deaths": "births_deaths.csv"}


def example_path(name: str) -> Path:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; have {sorted(EXAMPLES)}")
    return Path(str(resources.files("depcorr") / "data" / EXAMPLES[name][0]))


def load_example(name: str) -> Dataset:
    """Bundled dataset by name: ``mtcars``, ``fish_seabirds`` or ``births_deaths``."""
    return load_csv(example_path(name), name=name, provenance=EXAMPLES[name][1])


def original_path(name: str, directory=None) -> Path | None:
    """Location of a user-supplied original dataset, or None if absent.

    Looks in ``directory`` or, failing that, ``$DEPCORR_ORIGINAL_DATA_DIR``.
    """
    directory = directory or os.environ.get(ORIGINAL_DATA_ENV)
    if not directory:
        return None
    p = Path(directory) / ORIGINAL_FILES[name]
    return p if p.is_file() else None


def load_original(name: str, directory=None) -> Dataset | None:
    p = original_path(name, directory)
    if p is None:
        return None
    return load_csv(p, name=name, provenance=f"user-supplied original data: {p}")
