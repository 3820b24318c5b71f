"""Embedded study datasets and CSV input."""

import csv
import enum
import math
import os
from dataclasses import dataclass

import numpy as np

from ._errors import DimensionMismatch, DomainError, ParseError

_GUINEA_PIGS = (
    10, 33, 44, 56, 59, 72, 74, 77, 92, 93, 96, 100, 100, 102, 105, 107, 107,
    108, 108, 108, 109, 112, 121, 122, 122, 124, 130, 134, 136, 139, 144, 146,
    153, 159, 160, 163, 163, 168, 171, 172, 176, 113, 115, 116, 120, 183, 195,
    196, 197, 202, 213, 215, 216, 222, 230, 231, 240, 245, 251, 253, 254, 255,
    278, 293, 327, 342, 347, 361, 402, 432, 458, 555,
)

_GALAXY = (
    9.172, 9.350, 9.483, 9.558, 9.775, 10.227, 10.406, 16.084, 16.170, 18.419,
    18.552, 18.600, 18.927, 19.052, 19.070, 19.330, 19.343, 19.349, 19.440,
    19.473, 19.529, 19.541, 19.547, 19.663, 19.846, 19.856, 19.863, 19.914,
    19.918, 19.973, 19.989, 20.166, 20.175, 20.179, 20.196, 20.215, 20.221,
    20.415, 20.629, 20.795, 20.821, 20.846, 20.875, 20.986, 21.137, 21.492,
    21.701, 21.814, 21.921, 21.960, 22.185, 22.209, 22.242, 22.249, 22.314,
    22.374, 22.495, 22.746, 22.747, 22.888, 22.914, 23.206, 23.241, 23.263,
    23.484, 23.538, 23.542, 23.666, 23.706, 23.711, 24.129, 24.285, 24.289,
    24.366, 24.717, 24.990, 25.633, 26.960, 26.995, 32.065, 32.789, 34.279,
)

_ABBEY_PRICES = (
    296, 296, 300, 302, 300, 304, 303, 299, 293, 294, 294, 293, 295, 287, 288,
    297, 305, 307, 304, 303, 304, 304, 309, 309, 309, 307, 306, 304, 300, 296,
    301, 298, 295, 295, 293, 292, 307, 297, 294, 293, 306, 303, 301, 303, 308,
    305, 302, 301, 297, 299,
)


class Source(enum.Enum):
    EMBEDDED = "embedded"
    FILE = "file"


@dataclass(frozen=True, eq=False)
class Dataset:
    """Named sample: values is a vector or an n-by-d matrix."""
    name: str
    values: np.ndarray
    source: Source

    def __post_init__(self):
        object.__setattr__(self, "values", np.array(self.values, dtype=float))


EMBEDDED_NAMES = ("guinea_pigs", "galaxy", "abbey_prices")

_EMBEDDED = {
    "guinea_pigs": _GUINEA_PIGS,
    "galaxy": _GALAXY,
    "abbey_prices": _ABBEY_PRICES,
}


def load_embedded(name: str) -> Dataset:
    """One of the embedded samples: guinea_pigs, galaxy or abbey_prices."""
    if name not in _EMBEDDED:
        raise DomainError(
            f"unknown dataset {name!r}; embedded names are {', '.join(EMBEDDED_NAMES)}")
    return Dataset(name, np.array(_EMBEDDED[name], dtype=float), Source.EMBEDDED)


def abbey_returns() -> Dataset:
    """Daily returns r_t = (p_{t-1} - p_t) / p_{t-1} of the embedded share
    prices, t = 2..50; 49 values."""
    p = np.array(_ABBEY_PRICES, dtype=float)
    r = (p[:-1] - p[1:]) / p[:-1]
    return Dataset("abbey_returns", r, Source.EMBEDDED)


def _is_text(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return True
    return False


def _parse_cell(text: str, row: int, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"cell {text!r} is not a number",
                         row=row, col=col) from None
    if not math.isfinite(value):
        raise ParseError(f"cell {text!r} is not finite", row=row, col=col)
    return value


def read_csv(path: str, expected_columns: int | None = None) -> Dataset:
    """Numeric CSV with '.' decimal separator and an optional single header
    row.  Rows are 1-based physical lines in error locations."""
    rows = []
    ncol = None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, record in enumerate(reader, start=1):
            cells = [c.strip() for c in record]
            if not any(cells):
                continue
            if ncol is None:
                ncol = len(cells)
                # a non-numeric first row is taken as the header; a
                # non-finite number there is still an error
                if any(_is_text(c) for c in cells):
                    continue
                rows.append([_parse_cell(c, lineno, j + 1)
                             for j, c in enumerate(cells)])
                continue
            if len(cells) != ncol:
                raise ParseError(
                    f"expected {ncol} columns, found {len(cells)}", row=lineno)
            rows.append([_parse_cell(c, lineno, j + 1)
                         for j, c in enumerate(cells)])
    if not rows:
        raise ParseError(f"no numeric rows in {path}")
    if expected_columns is not None and ncol != expected_columns:
        raise DimensionMismatch(
            f"expected {expected_columns} columns, file has {ncol}")
    values = np.array(rows, dtype=float)
    if values.shape[1] == 1:
        values = values[:, 0]
    name = os.path.splitext(os.path.basename(path))[0]
    return Dataset(name, values, Source.FILE)
