"""Special functions behind the exact correlation density.

Only the real, convergent corner of the Gauss hypergeometric function is
covered: ``|z| < 1``, or ``z = 1`` when ``c - a - b > 0``. That is all the
density needs, since there ``z = (1 + r*rho)/2`` with ``|rho| < 1``.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .errors import DomainError

SERIES_TOL = 1e-15
SERIES_MAX_TERMS = 10_000


class HypergeomParams(NamedTuple):
    a: float
    b: float
    c: float
    z: float


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"log_gamma needs a positive finite argument, got {x!r}")
    return math.lgamma(x)


def _check_params(a, b, c, z):
    if c <= 0 and float(c).is_integer():
        raise DomainError(f"c must not be zero or a negative integer, got {c!r}")
    z = np.asarray(z, dtype=np.float64)
    if np.any(~np.isfinite(z)):
        raise DomainError("z must be finite")
    if np.any(np.abs(z) > 1):
        raise DomainError("power series diverges for |z| > 1")
    if np.any(np.abs(z) == 1) and c - a - b <= 0:
        raise DomainError(f"series diverges at |z| = 1 when c - a - b <= 0 (c-a-b={c - a - b})")
    return z


def gauss_2f1(p: HypergeomParams | None = None, *, a=None, b=None, c=None, z=None) -> float:
    """Evaluate 2F1(a, b; c; z) by direct power-series summation.

    Terms are accumulated until one falls below ``1e-15`` in absolute value,
    or 10,000 terms have been added.

    Examples
    --------
    >>> gauss_2f1(a=1, b=1, c=2, z=0.5)   # -log(1 - z) / z
    1.386294361119...
    """
    if p is None:
        p = HypergeomParams(a, b, c, z)
    z_arr = _check_params(p.a, p.b, p.c, p.z)
    if z_arr.ndim != 0:
        raise DomainError("gauss_2f1 takes a scalar z; use gauss_2f1_grid for arrays")
    out = kernels.hyp2f1_series(
        float(p.a), float(p.b), float(p.c), z_arr.reshape(1), SERIES_TOL, SERIES_MAX_TERMS
    )
    return float(out[0])


def gauss_2f1_grid(a: float, b: float, c: float, z) -> np.ndarray:
    """Vectorised :func:`gauss_2f1` over an array of arguments."""
    z_arr = _check_params(a, b, c, z)
    flat = np.ascontiguousarray(z_arr.ravel(), dtype=np.float64)
    out = kernels.hyp2f1_series(float(a), float(b), float(c), flat, SERIES_TOL, SERIES_MAX_TERMS)
    return np.asarray(out).reshape(z_arr.shape)
