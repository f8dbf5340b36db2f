"""Local-constant (Nadaraya-Watson) kernel regression with a Gaussian kernel.

The goodness of fit is the squared Pearson correlation between the response
and its fitted values. That keeps it inside ``[0, 1]`` even for smoothers
that are not projections.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import DegenerateInputError, DomainError, InsufficientDataError, ShapeError

LSCV_GRID_SIZE = 50
LSCV_LOW = 0.05
LSCV_HIGH = 5.0


@dataclass(frozen=True)
class KernelFit:
    bandwidth: float
    fitted: np.ndarray = field(repr=False)
    r_squared: float


def _as_pair(x, y, min_n):
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise ShapeError("regressor and response must be one-dimensional")
    if x.shape != y.shape:
        raise ShapeError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < min_n:
        raise InsufficientDataError(f"need at least {min_n} observations, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DomainError("inputs must be finite; drop missing values first")
    if np.ptp(x) == 0:
        raise DegenerateInputError("regressor is constant")
    return x, y


def squared_correlation(y: np.ndarray, fitted: np.ndarray) -> float:
    """Squared Pearson correlation of response and fit; 0 for a flat fit.

    A fit whose spread is within rounding of its magnitude counts as flat.
    """
    scale = max(float(np.max(np.abs(fitted))), np.finfo(float).tiny)
    if np.ptp(fitted) <= 1e-12 * scale or np.ptp(y) == 0:
        return 0.0
    a = y - y.mean()
    b = fitted - fitted.mean()
    # unit max-norm first so the dot products neither overflow nor underflow
    a = a / np.max(np.abs(a))
    b = b / np.max(np.abs(b))
    den = np.dot(a, a) * np.dot(b, b)
    if not den > 0:
        return 0.0
    r2 = np.dot(a, b) ** 2 / den
    return float(min(max(r2, 0.0), 1.0))


def nw_fit(x, y, bandwidth: float) -> KernelFit:
    """Fit ``y`` on ``x`` with a Gaussian Nadaraya-Watson smoother.

    Parameters
    ----------
    x, y : array_like
        Regressor and response of equal length (at least 5).
    bandwidth : float
        Kernel standard deviation, in the units of ``x``.
    """
    x, y = _as_pair(x, y, 5)
    if not bandwidth > 0 or not np.isfinite(bandwidth):
        raise DomainError(f"bandwidth must be positive and finite, got {bandwidth!r}")
    fitted = np.asarray(kernels.nw_fitted(x, y, float(bandwidth)))
    return KernelFit(bandwidth=float(bandwidth), fitted=fitted, r_squared=squared_correlation(y, fitted))


def bandwidth_grid(x) -> np.ndarray:
    """The 50 log-spaced LSCV candidates around the normal-reference scale."""
    x = np.asarray(x, dtype=np.float64)
    base = np.std(x, ddof=1) * x.size ** (-0.2)
    return np.geomspace(LSCV_LOW * base, LSCV_HIGH * base, LSCV_GRID_SIZE)


def lscv_profile(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Candidate bandwidths and their leave-one-out mean squared errors.

    A candidate scores ``inf`` when some observation has no neighbour with
    a representable kernel weight.
    """
    x, y = _as_pair(x, y, 10)
    hs = bandwidth_grid(x)
    return hs, np.asarray(kernels.loo_cv_profile(x, y, hs))


def lscv_bandwidth(x, y) -> float:
    """Least-squares cross-validated bandwidth; ties go to the smaller value."""
    hs, scores = lscv_profile(x, y)
    if not np.any(np.isfinite(scores)):
        return float(hs[-1])
    return float(hs[int(np.argmin(scores))])


def nw_fit_lscv(x, y) -> KernelFit:
    return nw_fit(x, y, lscv_bandwidth(x, y))
