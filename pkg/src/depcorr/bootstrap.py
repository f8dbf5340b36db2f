"""Resampling inference for generalized correlations.

Two schemes are offered:

``max_entropy``
    The maximum-entropy bootstrap for dependent data. Each replicate draws
    from a piecewise-uniform density fitted to the order statistics, then
    puts the draws back in the rank order of the original series. Paired
    series share one stream of uniforms, so their cross-sectional alignment
    survives resampling.
``iid``
    Ordinary resampling of observation pairs with replacement.

Replicate ``l`` is generated from ``numpy.random.default_rng([seed, l])``.
It does not depend on any other replicate, so results are identical
however many worker threads are used.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .classical import pearson
from .errors import DepCorrError, DomainError, InsufficientDataError, ShapeError
from .gencorr import rstar
from .taraldsen import ExactInterval, Tails

MIN_REPLICATES = 99
ME_TRIM = 0.10


class Method(str, enum.Enum):
    MAX_ENTROPY = "max_entropy"
    IID = "iid"


STATISTICS = ("y|x", "x|y", "depmeas", "pearson")


@dataclass(frozen=True)
class BootstrapResult:
    statistic_name: str
    estimate: float
    replicates: np.ndarray = field(repr=False)
    order_statistics: np.ndarray = field(repr=False)
    interval: ExactInterval
    p_value: float
    seed: int
    method: Method
    n_failed: int = 0

    @property
    def J(self) -> int:
        return int(self.replicates.size + self.n_failed)


def replicate_rng(seed: int, ell: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(ell)])


def _me_quantiles(x: np.ndarray, p_sorted: np.ndarray) -> np.ndarray:
    """Map sorted uniforms through the ME quantile function; back in rank order."""
    n = x.size
    order = np.argsort(x, kind="stable")
    xs = x[order]
    mid = 0.5 * (xs[:-1] + xs[1:])
    tail = stats.trim_mean(np.abs(np.diff(x)), ME_TRIM)
    knots = np.concatenate(([xs[0] - tail], mid, [xs[-1] + tail]))
    q = np.interp(p_sorted, np.linspace(0.0, 1.0, n + 1), knots)
    out = np.empty(n)
    out[order] = q
    return out


def _check_series(x, min_n=5):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeError("series must be one-dimensional")
    if x.size < min_n:
        raise InsufficientDataError(f"series too short for the ME bootstrap: n={x.size} < {min_n}")
    if not np.all(np.isfinite(x)):
        raise DomainError("series must be finite")
    return x


def meboot_replicate(x, seed: int, ell: int = 0) -> np.ndarray:
    """One maximum-entropy bootstrap replicate of ``x``.

    Steps: sort ``x`` and take midpoints of neighbouring order statistics
    as interval edges; extend both ends by the 10% trimmed mean of the
    absolute first differences; push ``n`` sorted uniforms through the
    piecewise-linear ME quantile function; place the results in the rank
    order of ``x``. The replicate therefore has exactly the ranks of ``x``.
    """
    x = _check_series(x)
    rng = replicate_rng(seed, ell)
    return _me_quantiles(x, np.sort(rng.random(x.size)))


def _replicate_pair(x, y, method, rng):
    n = x.size
    if method is Method.MAX_ENTROPY:
        p = np.sort(rng.random(n))
        return _me_quantiles(x, p), _me_quantiles(y, p)
    idx = rng.integers(0, n, size=n)
    return x[idx], y[idx]


def _statistic(name):
    if name == "y|x":
        return lambda x, y: rstar(x, y).r_star_y_given_x
    if name == "x|y":
        return lambda x, y: rstar(x, y).r_star_x_given_y
    if name == "depmeas":
        def dep(x, y):
            pair = rstar(x, y)
            sign = pair.cov_sign or 1
            return sign * max(abs(pair.r_star_y_given_x), abs(pair.r_star_x_given_y))
        return dep
    if name == "pearson":
        return pearson
    raise DomainError(f"unknown statistic {name!r}; choose from {STATISTICS}")


def _order_index(k: float) -> float:
    # 0.025 * 1000 is 25.000000000000004 in binary; snap before ceil/floor.
    return round(k, 9)


def order_statistic_interval(order_stats: np.ndarray, level: float, tails: Tails | str) -> ExactInterval:
    """Percentile interval read off sorted replicates (1-based order ranks).

    two-tail: ``[os(ceil(a/2 J)), os(floor((1 - a/2) J))]``; ``one_right``:
    ``[os(ceil(a J)), 1]``; ``one_left``: ``[-1, os(floor(level J))]``, where
    ``a = 1 - level``.
    """
    if not 0 < level < 1:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    tails = Tails(tails)
    J = order_stats.size
    alpha = 1.0 - level

    def pick(rank):
        rank = min(max(int(rank), 1), J)
        return float(order_stats[rank - 1])

    if tails is Tails.TWO:
        lo = pick(math.ceil(_order_index(alpha / 2 * J)))
        hi = pick(math.floor(_order_index((1 - alpha / 2) * J)))
    elif tails is Tails.ONE_RIGHT:
        lo, hi = pick(math.ceil(_order_index(alpha * J))), 1.0
    else:
        lo, hi = -1.0, pick(math.floor(_order_index(level * J)))
    return ExactInterval(lower=lo, upper=hi, level=level, tails=tails)


def bootstrap_pvalue(estimate: float, replicates: np.ndarray) -> float:
    """Share of replicates whose sign disagrees with the point estimate."""
    if replicates.size == 0:
        return float("nan")
    opposite = replicates < 0 if estimate >= 0 else replicates > 0
    return float(np.mean(opposite))


def bootstrap_rstar(
    x,
    y,
    J: int = 999,
    level: float = 0.95,
    tails: Tails | str = Tails.TWO,
    method: Method | str = Method.MAX_ENTROPY,
    seed: int = 0,
    statistic: str = "y|x",
    n_jobs: int | None = 1,
) -> BootstrapResult:
    """Bootstrap distribution of a generalized correlation.

    Parameters
    ----------
    x, y : array_like
        The pair. ``statistic="y|x"`` bootstraps r*(y|x), the default.
    J : int
        Number of replicates, at least 99.
    level, tails
        Percentile interval specification; see :func:`order_statistic_interval`.
    method : {"max_entropy", "iid"}
    seed : int
        Non-negative master seed.
    statistic : {"y|x", "x|y", "depmeas", "pearson"}
    n_jobs : int or None
        Worker threads; ``None`` lets the executor choose. Output does not
        depend on this.

    Replicates where the statistic is undefined (for example an iid draw
    with a constant column) are dropped and counted in ``n_failed``.
    """
    if J < MIN_REPLICATES:
        raise DomainError(f"need at least {MIN_REPLICATES} replicates, got {J}")
    if seed < 0:
        raise DomainError("seed must be non-negative")
    method = Method(method)
    tails = Tails(tails)
    x = _check_series(x, 10 if statistic != "pearson" else 5)
    y = _check_series(y, 10 if statistic != "pearson" else 5)
    if x.shape != y.shape:
        raise ShapeError(f"length mismatch: {x.size} vs {y.size}")
    stat = _statistic(statistic)
    estimate = float(stat(x, y))

    def one(ell):
        xr, yr = _replicate_pair(x, y, method, replicate_rng(seed, ell))
        try:
            return float(stat(xr, yr))
        except DepCorrError:
            return float("nan")

    if n_jobs == 1:
        values = [one(ell) for ell in range(1, J + 1)]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            values = list(pool.map(one, range(1, J + 1)))
    values = np.asarray(values)
    ok = np.isfinite(values)
    reps = values[ok]
    if reps.size < MIN_REPLICATES:
        raise DepCorrError(f"only {reps.size} of {J} replicates produced a finite statistic")
    order_stats = np.sort(reps)
    for arr in (reps, order_stats):
        arr.setflags(write=False)
    return BootstrapResult(
        statistic_name=f"r*({statistic})" if statistic in ("y|x", "x|y") else statistic,
        estimate=estimate,
        replicates=reps,
        order_statistics=order_stats,
        interval=order_statistic_interval(order_stats, level, tails),
        p_value=bootstrap_pvalue(estimate, reps),
        seed=int(seed),
        method=method,
        n_failed=int((~ok).sum()),
    )
