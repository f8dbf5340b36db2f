import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from depcorr.classical import pearson
from depcorr.errors import DegenerateInputError, ShapeError
from depcorr.gencorr import dep_measure, gmc_matrix, rstar

# Published kernel-regression values for mtcars; bandwidth method not pinned.
MPG_GIVEN_HP = -0.938
HP_GIVEN_MPG = -0.853
BW_TOL = 0.06


def test_mtcars_pair(mpg_hp):
    hp, mpg = mpg_hp
    pair = rstar(hp, mpg)
    assert pair.r_star_y_given_x == pytest.approx(MPG_GIVEN_HP, abs=BW_TOL)
    assert pair.r_star_x_given_y == pytest.approx(HP_GIVEN_MPG, abs=BW_TOL)
    assert pair.cov_sign == -1
    assert abs(pair.r_star_y_given_x) > abs(pair.r_star_x_given_y)


def test_perfect_dependence(rng):
    x = rng.normal(size=40)
    pos, neg = rstar(x, x), rstar(x, -x)
    # a Gaussian smoother only interpolates in the h -> 0 limit
    assert pos.r_star_y_given_x > 0.999 and pos.r_star_x_given_y > 0.999
    assert neg.r_star_y_given_x < -0.999 and neg.r_star_x_given_y < -0.999
    assert dep_measure(x, -x) == pytest.approx(-1, abs=1e-3)


def test_independent_pairs_are_small():
    small = 0
    for seed in range(20):
        g = np.random.default_rng(100 + seed)
        x, y = g.normal(size=500), g.normal(size=500)
        p = rstar(x, y)
        small += abs(p.r_star_y_given_x) < 0.15 and abs(p.r_star_x_given_y) < 0.15
    assert small >= 18


def test_zero_covariance_defaults_positive():
    x = np.arange(-5.0, 6.0)
    pair = rstar(x, x**2)
    assert pair.zero_covariance and pair.cov_sign == 0
    assert pair.r_star_y_given_x > 0.99  # y is a function of x
    assert pair.r_star_x_given_y >= 0
    assert dep_measure(x, x**2) == pytest.approx(pair.r_star_y_given_x)


def test_dep_measure_mtcars(mpg_hp):
    hp, mpg = mpg_hp
    dm = dep_measure(mpg, hp)
    assert dm == pytest.approx(MPG_GIVEN_HP, abs=BW_TOL)
    assert abs(dm) >= abs(pearson(mpg, hp))
    assert dm == pytest.approx(rstar(hp, mpg).r_star_y_given_x)


def test_matrix_mtcars(mtcars):
    m = gmc_matrix(mtcars.matrix(["mpg", "hp"]), ["mpg", "hp"])
    assert m.values[0, 0] == m.values[1, 1] == 1.0
    assert m["mpg", "hp"] == pytest.approx(MPG_GIVEN_HP, abs=BW_TOL)
    assert m["hp", "mpg"] == pytest.approx(HP_GIVEN_MPG, abs=BW_TOL)
    d = m.to_dict()
    assert d["labels"] == ["mpg", "hp"] and len(d["values"]) == 2


def test_matrix_matches_pairwise_rstar(mtcars):
    cols = ["mpg", "hp", "wt", "qsec"]
    m = gmc_matrix(mtcars.matrix(cols), cols)
    assert np.all(np.diag(m.values) == 1)
    for i, a in enumerate(cols):
        for j, b in enumerate(cols):
            if i != j:
                assert m.values[i, j] == rstar(mtcars.columns[b], mtcars.columns[a]).r_star_y_given_x
    assert not np.allclose(m.values, m.values.T)


def test_matrix_identical_columns(rng):
    x = rng.normal(size=30)
    m = gmc_matrix(np.column_stack([x, x, x]))
    assert np.all(m.values > 0.999)
    assert m.labels == ("V1", "V2", "V3")


def test_matrix_constant_column_flagged(rng):
    x = rng.normal(size=30)
    data = np.column_stack([x, np.ones(30), x**3])
    m = gmc_matrix(data, ["a", "const", "c"])
    assert m.undefined == ("const",)
    assert np.isnan(m.values[1, 0]) and np.isnan(m.values[0, 1])
    assert m.values[1, 1] == 1.0
    assert np.isfinite(m.values[0, 2]) and np.isfinite(m.values[2, 0])
    assert m.to_dict()["values"][0][1] is None


def test_matrix_errors(rng):
    with pytest.raises(ShapeError):
        gmc_matrix(rng.normal(size=(20, 1)))
    with pytest.raises(ShapeError):
        gmc_matrix(rng.normal(size=(20, 2)), ["a"])
    with pytest.raises(DegenerateInputError):
        gmc_matrix(np.ones((20, 2)))


def test_matrix_deterministic_across_workers(mtcars):
    cols = ["mpg", "hp", "disp", "drat"]
    a = gmc_matrix(mtcars.matrix(cols), cols, max_workers=1)
    b = gmc_matrix(mtcars.matrix(cols), cols, max_workers=4)
    np.testing.assert_array_equal(a.values, b.values)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-2, 2))
def test_sign_and_definition_identity(seed, slope):
    g = np.random.default_rng(seed)
    x = g.normal(size=40)
    y = slope * x + 0.3 * x**2 + g.normal(size=40)
    r = pearson(x, y)
    pair = rstar(x, y)
    dm = dep_measure(x, y)
    assert abs(dm) == max(abs(pair.r_star_y_given_x), abs(pair.r_star_x_given_y))
    for v in (pair.r_star_y_given_x, pair.r_star_x_given_y):
        assert -1 <= v <= 1
        assert np.sign(v) in (0, pair.cov_sign or 1)
    if abs(r) > 0.05:
        assert np.sign(dm) == np.sign(r)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_permutation_equivariance(seed):
    g = np.random.default_rng(seed)
    x = g.normal(size=30)
    y = np.exp(x) + g.normal(size=30)
    perm = g.permutation(30)
    a, b = rstar(x, y), rstar(x[perm], y[perm])
    assert b.r_star_y_given_x == pytest.approx(a.r_star_y_given_x, abs=1e-10)
    assert b.r_star_x_given_y == pytest.approx(a.r_star_x_given_y, abs=1e-10)
