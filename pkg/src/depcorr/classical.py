"""Classical dependence measures used as baselines.

Covers Pearson correlation and Fisher's z, contingency-table independence
checks, binned entropy measures, the Gaussian-mean Fisher-information
ratio and the Hellinger correlation as a function of the Bhattacharyya
affinity. Logs are natural throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import stats

from .errors import DegenerateInputError, DomainError, InsufficientDataError, ShapeError


# -- correlation ------------------------------------------------------------

def pearson(x, y) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ShapeError("pearson needs two 1-d series of equal length")
    if x.size < 3:
        raise InsufficientDataError(f"need at least 3 observations, got {x.size}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx, syy = np.dot(dx, dx), np.dot(dy, dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInputError("correlation is undefined for a constant series")
    return float(np.clip(np.dot(dx, dy) / math.sqrt(sxx * syy), -1.0, 1.0))


class FisherZ(NamedTuple):
    z: float
    p_two_tail: float
    se: float


def _fisher_se(n: int, variance: str) -> float:
    if variance == "n":
        return 1.0 / math.sqrt(n)
    if variance == "n-3":
        return 1.0 / math.sqrt(n - 3)
    raise DomainError(f"variance must be 'n' or 'n-3', got {variance!r}")


def fisher_z(r: float, n: int, variance: str = "n") -> FisherZ:
    """Fisher's z-transform of ``r`` with a two-tail normal p-value.

    ``variance="n"`` uses ``Var(z) = 1/n``; ``variance="n-3"`` uses the
    textbook ``1/(n-3)``, which is what simulation supports.
    """
    if not -1 < r < 1:
        raise DomainError(f"Fisher z needs |r| < 1, got {r!r}")
    if n < 4:
        raise DomainError(f"Fisher z needs n >= 4, got {n!r}")
    z = math.atanh(r)
    se = _fisher_se(n, variance)
    p = math.erfc(abs(z) / se / math.sqrt(2.0))
    return FisherZ(z=z, p_two_tail=p, se=se)


def fisher_interval(r: float, n: int, level: float = 0.95, variance: str = "n-3") -> tuple[float, float]:
    """Two-tail confidence interval for rho, back-transformed from the z scale."""
    if not 0 < level < 1:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    fz = fisher_z(r, n, variance)
    half = stats.norm.ppf(0.5 + level / 2.0) * fz.se
    return math.tanh(fz.z - half), math.tanh(fz.z + half)


# -- contingency tables -----------------------------------------------------

@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray = field(repr=False)
    row_totals: np.ndarray = field(repr=False)
    col_totals: np.ndarray = field(repr=False)
    grand_total: float

    @classmethod
    def from_counts(cls, counts) -> "ContingencyTable":
        counts = np.array(counts, dtype=np.float64)
        if counts.ndim != 2 or min(counts.shape) < 1:
            raise ShapeError("a contingency table must be a 2-d array")
        if np.any(counts < 0) or not np.all(np.isfinite(counts)):
            raise DomainError("counts must be finite and non-negative")
        total = counts.sum()
        if total <= 0:
            raise DegenerateInputError("table has no observations")
        counts.setflags(write=False)
        rows, cols = counts.sum(axis=1), counts.sum(axis=0)
        rows.setflags(write=False)
        cols.setflags(write=False)
        return cls(counts=counts, row_totals=rows, col_totals=cols, grand_total=float(total))

    @property
    def shape(self):
        return self.counts.shape

    def expected(self) -> np.ndarray:
        if np.any(self.row_totals == 0) or np.any(self.col_totals == 0):
            raise DegenerateInputError("every row and column total must be positive")
        return np.outer(self.row_totals, self.col_totals) / self.grand_total


class ChiSquare(NamedTuple):
    stat: float
    df: int
    p_value: float


def _as_table(t) -> ContingencyTable:
    return t if isinstance(t, ContingencyTable) else ContingencyTable.from_counts(t)


def chi_square(t) -> ChiSquare:
    """Pearson's statistic ``sum (O - E)^2 / E`` with ``(r-1)(c-1)`` df."""
    t = _as_table(t)
    e = t.expected()
    stat = float(np.sum((t.counts - e) ** 2 / e))
    r, c = t.shape
    df = (r - 1) * (c - 1)
    p = float(stats.chi2.sf(stat, df)) if df > 0 else 1.0
    return ChiSquare(stat=stat, df=df, p_value=p)


class IndependenceDeviations(NamedTuple):
    joint: np.ndarray        # P(R_i, C_j) - P(R_i) P(C_j)
    row_given_col: np.ndarray  # P(R_i | C_j) - P(R_i)
    col_given_row: np.ndarray  # P(C_j | R_i) - P(C_j)


def independence_criteria(t) -> IndependenceDeviations:
    t = _as_table(t)
    t.expected()  # margin check
    p = t.counts / t.grand_total
    pr = t.row_totals / t.grand_total
    pc = t.col_totals / t.grand_total
    joint = p - np.outer(pr, pc)
    row_given_col = t.counts / t.col_totals[None, :] - pr[:, None]
    col_given_row = t.counts / t.row_totals[:, None] - pc[None, :]
    return IndependenceDeviations(joint, row_given_col, col_given_row)


# -- binned entropy ---------------------------------------------------------

@dataclass(frozen=True)
class BinnedDistribution:
    edges: np.ndarray = field(repr=False)
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.float64)
        probs = np.asarray(self.probs, dtype=np.float64)
        if edges.ndim != 1 or probs.ndim != 1 or edges.size != probs.size + 1:
            raise ShapeError("need len(edges) == len(probs) + 1")
        if np.any(np.diff(edges) <= 0):
            raise DomainError("bin edges must be strictly increasing")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise DomainError("probabilities must be non-negative and sum to 1")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_sample(cls, x, edges) -> "BinnedDistribution":
        counts, edges = np.histogram(np.asarray(x, dtype=np.float64), bins=edges)
        return cls(edges=edges, probs=counts / counts.sum())


def default_bins(n: int) -> int:
    return max(2, math.ceil(math.sqrt(n)))


def _entropy(probs: np.ndarray) -> float:
    p = probs[probs > 0]
    return float(-np.sum(p * np.log(p)))


def entropy_dependence(x, y, bins: int | None = None) -> float:
    """Proportional reduction in the entropy of ``y`` from knowing ``x``.

    ``(H(Y) - H(Y|X)) / H(Y)`` from the binned joint histogram, with
    ``bins`` equal-width bins per axis over the observed range (default
    ``ceil(sqrt(n))``). Not symmetric in its arguments.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ShapeError("entropy_dependence needs two 1-d series of equal length")
    if x.size < 20:
        raise InsufficientDataError(f"need at least 20 observations, got {x.size}")
    bins = default_bins(x.size) if bins is None else int(bins)
    if bins < 2:
        raise DomainError(f"need at least 2 bins, got {bins}")
    joint, _, _ = np.histogram2d(x, y, bins=bins)
    joint /= joint.sum()
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    h_y = _entropy(py)
    if h_y == 0:
        raise DegenerateInputError("response entropy is zero; the measure is undefined")
    h_y_given_x = sum(pxi * _entropy(row / pxi) for pxi, row in zip(px, joint) if pxi > 0)
    return float((h_y - h_y_given_x) / h_y)


def kl_divergence(p: BinnedDistribution, q: BinnedDistribution) -> float:
    """``sum p_i log(p_i / q_i)``; raises when ``q`` misses mass that ``p`` has."""
    if p.edges.shape != q.edges.shape or not np.allclose(p.edges, q.edges, rtol=0, atol=1e-12):
        raise ShapeError("distributions must share bin edges")
    support = p.probs > 0
    if np.any(q.probs[support] <= 0):
        raise DomainError("KL divergence undefined: q is zero where p is positive")
    pp, qq = p.probs[support], q.probs[support]
    return float(max(np.sum(pp * np.log(pp / qq)), 0.0))


# -- information ratio and Hellinger ----------------------------------------

def fisher_information_ratio(n_proxy: int, n_full: int) -> float:
    """Share of Fisher information about a Gaussian mean retained under MCAR loss.

    With known variance the information is ``n / sigma^2``, so the ratio of
    observed to full information is the count ratio.
    """
    if n_full <= 0 or n_proxy <= 0:
        raise DomainError("sample counts must be positive")
    if n_proxy > n_full:
        raise DomainError(f"n_proxy ({n_proxy}) exceeds n_full ({n_full})")
    return n_proxy / n_full


def hellinger_eta_from_B(B: float) -> float:
    """Hellinger correlation from the Bhattacharyya affinity ``B``.

    Real-valued only for ``0 < B <= 1``; ``B = 1`` (independence) maps to 0
    and ``B -> 0`` maps to 1.
    """
    if not 0 < B <= math.sqrt(2):
        raise DomainError(f"B must lie in (0, sqrt(2)], got {B!r}")
    inner = 4.0 - 3.0 * B ** 4
    if inner < 0:
        raise DomainError(f"negative radicand 4 - 3B^4 for B={B!r}")
    # B^4 + sqrt(4 - 3B^4) - 2 == B^4 (s - 1) / (s + 2) with s = sqrt(4 - 3B^4);
    # the factored form avoids cancellation as B -> 0.
    s = math.sqrt(inner)
    if s < 1:
        raise DomainError(f"negative radicand for B={B!r}; eta is not real")
    return 2.0 * math.sqrt((s - 1.0) / (s + 2.0))
