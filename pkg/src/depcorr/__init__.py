"""Asymmetric generalized correlations and exact inference on correlations.

Typical use::

    from depcorr import load_example, pairwise_complete, rstar, tarald_pvalue

    cars = load_example("mtcars")
    pair = pairwise_complete(cars, "hp", "mpg")
    rstar(pair.x, pair.y)          # r*(mpg|hp), r*(hp|mpg)
    tarald_pvalue(32, obs_r=-0.938)
"""
__version__ = "0.1.0"

from ._backend import BACKEND
from .bootstrap import BootstrapResult, Method, bootstrap_rstar, meboot_replicate
from .classical import (
    BinnedDistribution,
    ContingencyTable,
    chi_square,
    entropy_dependence,
    fisher_information_ratio,
    fisher_interval,
    fisher_z,
    hellinger_eta_from_B,
    independence_criteria,
    kl_divergence,
    pearson,
)
from .errors import (
    DegenerateInputError,
    DepCorrError,
    DomainError,
    InsufficientDataError,
    ParseError,
    ShapeError,
)
from .gencorr import AsymmetricMatrix, GenCorrPair, dep_measure, gmc_matrix, rstar
from .ingestion import Dataset, PairedSample, load_csv, load_example, pairwise_complete, write_csv
from .kernel_regression import KernelFit, lscv_bandwidth, nw_fit
from .special_fn import HypergeomParams, gauss_2f1, log_gamma
from .taraldsen import (
    ExactInterval,
    GridDensity,
    Tails,
    exact_interval,
    quantile_table,
    tarald_density,
    tarald_pvalue,
    tarald_quantile,
)
