"""Generalized correlations from kernel regressions.

``r*(y|x)`` is the square root of the kernel-regression R^2 of ``y`` on
``x``, signed by the covariance of the pair. Because the two regressions
differ, ``r*(y|x)`` and ``r*(x|y)`` generally differ as well.

Matrix convention: ``values[i, j] = r*(row_i | col_j)``, so the column
names the conditioning variable ("cause") and the row the response.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, ShapeError
from .kernel_regression import nw_fit_lscv


@dataclass(frozen=True)
class GenCorrPair:
    r_star_y_given_x: float
    r_star_x_given_y: float
    cov_sign: int
    zero_covariance: bool = False


@dataclass(frozen=True)
class AsymmetricMatrix:
    labels: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    undefined: tuple[str, ...] = ()

    def __getitem__(self, key):
        """``m["mpg", "hp"]`` returns r*(mpg | hp)."""
        row, col = key
        return float(self.values[self.labels.index(row), self.labels.index(col)])

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "values": [[None if np.isnan(v) else float(v) for v in row] for row in self.values],
            "convention": "values[i][j] = r*(row_i | col_j); column is the conditioning variable",
            "undefined": list(self.undefined),
        }


def covariance_sign(x, y) -> int:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    cov = np.dot(x - x.mean(), y - y.mean())
    return int(np.sign(cov))


def _signed_root(r2: float, sign: int) -> float:
    return float(np.clip(sign * np.sqrt(r2), -1.0, 1.0))


def rstar(x, y) -> GenCorrPair:
    """Both generalized correlations of a pair.

    The bandwidth for each direction is chosen by least-squares cross
    validation. When the covariance is exactly zero both entries are taken
    as positive and ``zero_covariance`` is set.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ShapeError(f"length mismatch: {x.size} vs {y.size}")
    sign = covariance_sign(x, y)
    zero = sign == 0
    if zero:
        sign = 1
    y_on_x = nw_fit_lscv(x, y)
    x_on_y = nw_fit_lscv(y, x)
    return GenCorrPair(
        r_star_y_given_x=_signed_root(y_on_x.r_squared, sign),
        r_star_x_given_y=_signed_root(x_on_y.r_squared, sign),
        cov_sign=0 if zero else sign,
        zero_covariance=zero,
    )


def dep_measure(x, y) -> float:
    """Covariance-signed larger magnitude of the two generalized correlations."""
    pair = rstar(x, y)
    sign = pair.cov_sign or 1
    return sign * max(abs(pair.r_star_y_given_x), abs(pair.r_star_x_given_y))


def gmc_matrix(data, labels: Sequence[str] | None = None, max_workers: int | None = None) -> AsymmetricMatrix:
    """Fill the p x p matrix of generalized correlations.

    Constant columns cannot be regressed on; their row and column are set
    to NaN (the diagonal stays 1) and their labels reported in ``undefined``.
    """
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2 or data.shape[1] < 2:
        raise ShapeError("need an n x p matrix with at least two columns")
    p = data.shape[1]
    labels = tuple(labels) if labels is not None else tuple(f"V{i + 1}" for i in range(p))
    if len(labels) != p:
        raise ShapeError(f"{len(labels)} labels for {p} columns")

    constant = [np.ptp(data[:, j]) == 0 for j in range(p)]
    values = np.full((p, p), np.nan)
    np.fill_diagonal(values, 1.0)

    pairs = [(i, j) for i in range(p) for j in range(i + 1, p) if not (constant[i] or constant[j])]

    def work(ij):
        i, j = ij
        return ij, rstar(data[:, j], data[:, i])

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        for (i, j), pair in pool.map(work, pairs):
            values[i, j] = pair.r_star_y_given_x
            values[j, i] = pair.r_star_x_given_y

    if all(constant):
        raise DegenerateInputError("every column is constant")
    undefined = tuple(lab for lab, c in zip(labels, constant) if c)
    values.setflags(write=False)
    return AsymmetricMatrix(labels=labels, values=values, undefined=undefined)
