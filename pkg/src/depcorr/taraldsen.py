"""Exact-density inference for a correlation coefficient.

The density of ``r`` given a population correlation ``rho`` and ``v = n - 1``
degrees of freedom is tabulated on a uniform grid over ``[-1, 1]``; the grid
heights are rescaled to probability masses so the rectangle width cancels.
Quantiles and p-values then read off the running sum with fixed index
rules, which reproduces the published quantile table cell for cell.

All heights are built in log space, so there is no overflow for large ``n``.
``winsorize=True`` instead freezes the gamma-ratio prefactor at ``v = 164``
as older code did. That prefactor is constant in ``r``, so it changes the
reported heights but never the masses, quantiles or p-values.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError
from .special_fn import gauss_2f1_grid, log_gamma

DEFAULT_GRID_STEP = 0.001
WINSOR_V = 164

TABLE1_SAMPLE_SIZES = (5, 10, 15, 20, 25, 30, 40, 70, 90, 100, 150)
TABLE1_CUM_PROBS = (0.01, 0.025, 0.05, 0.1, 0.9, 0.95, 0.975, 0.99)


class Tails(str, enum.Enum):
    """Which side(s) of the distribution an interval leaves open.

    ``ONE_RIGHT`` keeps the upper part: ``[q(1 - level), 1]``.
    ``ONE_LEFT`` keeps the lower part: ``[-1, q(level)]``.
    ``TWO`` trims ``(1 - level)/2`` from each side.
    """

    ONE_LEFT = "one_left"
    ONE_RIGHT = "one_right"
    TWO = "two"


@dataclass(frozen=True)
class GridDensity:
    n: int
    rho: float
    grid_step: float
    grid: np.ndarray = field(repr=False)
    height: np.ndarray = field(repr=False)
    mass: np.ndarray = field(repr=False)
    cum: np.ndarray = field(repr=False)

    @property
    def v(self) -> int:
        return self.n - 1

    @property
    def density(self) -> np.ndarray:
        """Normalised density values (mass per unit ``r``)."""
        return self.mass / self.grid_step


@dataclass(frozen=True)
class ExactInterval:
    lower: float
    upper: float
    level: float
    tails: Tails

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def make_grid(grid_step: float = DEFAULT_GRID_STEP) -> np.ndarray:
    """Uniform grid ``-1, -1 + h, ..., 1`` built as ``-1 + i*h``."""
    if not 0 < grid_step <= 1:
        raise DomainError(f"grid_step must lie in (0, 1], got {grid_step!r}")
    m = 2.0 / grid_step
    steps = int(round(m))
    if abs(m - steps) > 1e-9 * max(1.0, m):
        raise DomainError(f"grid_step {grid_step!r} does not divide 2 into whole intervals")
    grid = -1.0 + np.arange(steps + 1) * grid_step
    grid[-1] = 1.0
    return grid


def _check_n_rho(n, rho):
    if int(n) != n or n < 3:
        raise DomainError(f"sample size n must be an integer >= 3, got {n!r}")
    if not -1 < rho < 1:
        raise DomainError(f"rho must lie strictly inside (-1, 1), got {rho!r}")


def log_prefactor(v: float, winsorize: bool = False) -> float:
    """``log[v (v-1) Gamma(v-1) / (sqrt(2 pi) Gamma(v + 1/2))]``."""
    if winsorize and v > WINSOR_V:
        v = WINSOR_V
    return (
        math.log(v)
        + math.log(v - 1)
        + log_gamma(v - 1)
        - 0.5 * math.log(2 * math.pi)
        - log_gamma(v + 0.5)
    )


def log_heights(grid: np.ndarray, n: int, rho: float, winsorize: bool = False) -> np.ndarray:
    """Log of the unnormalised density at each grid point (``-inf`` at ``r = +-1``)."""
    v = n - 1
    one_minus_r2 = 1.0 - grid * grid
    inside = one_minus_r2 > 0
    out = np.full(grid.shape, -np.inf)
    r = grid[inside]
    hyp = gauss_2f1_grid(1.5, -0.5, v + 0.5, (1.0 + r * rho) / 2.0)
    out[inside] = (
        log_prefactor(v, winsorize)
        + 0.5 * (v - 1) * np.log(one_minus_r2[inside])
        + 0.5 * (v - 2) * math.log1p(-rho * rho)
        + 0.5 * (1 - 2 * v) * np.log1p(-rho * r)
        + np.log(hyp)
    )
    return out


@lru_cache(maxsize=64)
def _density_cached(n: int, rho: float, grid_step: float, winsorize: bool) -> GridDensity:
    grid = make_grid(grid_step)
    logh = log_heights(grid, n, rho, winsorize)
    shift = logh.max()
    scaled = np.exp(logh - shift)
    mass = scaled / scaled.sum()
    cum = np.cumsum(mass)
    height = np.exp(logh)
    for arr in (grid, height, mass, cum):
        arr.setflags(write=False)
    return GridDensity(n=n, rho=rho, grid_step=grid_step, grid=grid, height=height, mass=mass, cum=cum)


def tarald_density(
    n: int, rho: float = 0.0, grid_step: float = DEFAULT_GRID_STEP, *, winsorize: bool = False
) -> GridDensity:
    """Tabulate the exact density of ``r`` for sample size ``n`` on a grid.

    Parameters
    ----------
    n : int
        Sample size; degrees of freedom are ``v = n - 1``.
    rho : float
        Population correlation, strictly inside ``(-1, 1)``.
    grid_step : float
        Grid spacing; must divide 2 evenly. The default gives 2001 points.
    winsorize : bool
        Freeze the gamma prefactor at ``v = 164`` (affects ``height`` only).

    Returns
    -------
    GridDensity
        Immutable grid, heights, masses and running sums. Results are cached.
    """
    _check_n_rho(n, rho)
    return _density_cached(int(n), float(rho), float(grid_step), bool(winsorize))


def tarald_quantile(d: GridDensity, cum_prob: float) -> float:
    """Grid point just past the last running sum strictly below ``cum_prob``."""
    if not 0 < cum_prob < 1:
        raise DomainError(f"cumulative probability must lie in (0, 1), got {cum_prob!r}")
    below = np.flatnonzero(d.cum < cum_prob)
    idx = below[-1] + 1 if below.size else 0
    idx = min(idx, d.grid.size - 1)
    return float(d.grid[idx])


def tarald_pvalue(
    n: int,
    obs_r: float,
    rho: float = 0.0,
    grid_step: float = DEFAULT_GRID_STEP,
) -> float:
    """One-tail p-value of an observed correlation against ``rho``.

    Negative ``obs_r`` gives the left-tail mass and non-negative ``obs_r``
    the right-tail mass. Both are read at the first grid point not below
    ``obs_r``.
    """
    if not -1 <= obs_r <= 1:
        raise DomainError(f"observed correlation must lie in [-1, 1], got {obs_r!r}")
    d = tarald_density(n, rho, grid_step)
    below = np.flatnonzero(d.grid < obs_r)
    idx = below[-1] + 1 if below.size else 0
    idx = min(idx, d.grid.size - 1)
    p = d.cum[idx] if obs_r < 0 else 1.0 - d.cum[idx]
    return float(min(max(p, 0.0), 1.0))


def pvalue_tail(obs_r: float) -> str:
    return "left" if obs_r < 0 else "right"


def exact_interval(
    n: int,
    rho: float = 0.0,
    level: float = 0.95,
    tails: Tails | str = Tails.TWO,
    grid_step: float = DEFAULT_GRID_STEP,
) -> ExactInterval:
    """Acceptance interval for ``r`` under the null correlation ``rho``.

    >>> iv = exact_interval(30, level=0.95)
    >>> iv.lower, iv.upper
    (-0.35, 0.35)
    """
    if not 0 < level < 1:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    tails = Tails(tails)
    d = tarald_density(n, rho, grid_step)
    if tails is Tails.TWO:
        alpha = (1.0 - level) / 2.0
        lo, hi = tarald_quantile(d, alpha), tarald_quantile(d, 1.0 - alpha)
    elif tails is Tails.ONE_RIGHT:
        lo, hi = tarald_quantile(d, 1.0 - level), 1.0
    else:
        lo, hi = -1.0, tarald_quantile(d, level)
    return ExactInterval(lower=_tidy(lo), upper=_tidy(hi), level=level, tails=tails)


def _tidy(value: float) -> float:
    # -1 + i*h carries representation noise; 12 decimals is far below any grid step.
    return round(value, 12)


def quantile_table(
    sample_sizes: Sequence[int] = TABLE1_SAMPLE_SIZES,
    cum_probs: Sequence[float] = TABLE1_CUM_PROBS,
    rho: float = 0.0,
    grid_step: float = DEFAULT_GRID_STEP,
) -> np.ndarray:
    """Quantile matrix, rows indexed by sample size and columns by probability.

    Values are unrounded grid points; round to 2 decimals for display.
    """
    for c in cum_probs:
        if not 0 < c < 1:
            raise DomainError(f"cumulative probabilities must lie in (0, 1), got {c!r}")
    out = np.empty((len(sample_sizes), len(cum_probs)))
    for i, n in enumerate(sample_sizes):
        d = tarald_density(n, rho, grid_step)
        for j, c in enumerate(cum_probs):
            out[i, j] = _tidy(tarald_quantile(d, c))
    return out
