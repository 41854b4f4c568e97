"""VAR estimation, information criteria, sequential LR, lag selection."""

import math

import numpy as np
import pytest
from statsmodels.tsa.api import VAR as SmVAR

from conftest import mc_lr_size
from switchvar.errors import (
    ComparisonError,
    DegenerateInputError,
    InsufficientDataError,
)
from switchvar.varbase import (
    VarModel,
    build_var_design,
    fit_var,
    information_criteria,
    select_lag,
    sequential_lr,
)


def simulate_var(T, A_list, intercept, chol, seed, k=2):
    rng = np.random.default_rng(seed)
    p = len(A_list)
    data = np.zeros((T, k))
    shocks = rng.standard_normal((T, k)) @ chol.T
    for t in range(p, T):
        data[t] = intercept + shocks[t]
        for i, A in enumerate(A_list):
            data[t] += A @ data[t - 1 - i]
    return data


@pytest.fixture(scope="module")
def var2_data():
    A1 = np.array([[0.4, 0.1], [0.0, 0.3]])
    A2 = np.array([[-0.1, 0.0], [0.05, -0.2]])
    chol = np.linalg.cholesky(np.array([[1.0, 0.3], [0.3, 1.0]]))
    return simulate_var(600, [A1, A2], np.array([0.5, -0.2]), chol, seed=21)


class TestFitVar:
    def test_ar1_coefficient_recovery(self):
        rng = np.random.default_rng(22)
        y = np.zeros(5000)
        shocks = rng.standard_normal(5000)
        for t in range(1, 5000):
            y[t] = 0.5 * y[t - 1] + shocks[t]
        m = fit_var(y, 1)
        coef = m.coefs[0, 0, 0]
        se = math.sqrt((1 - 0.5**2) / m.nobs)
        assert abs(coef - 0.5) < 3 * se

    def test_matches_statsmodels(self, var2_data):
        mine = fit_var(var2_data, 2)
        sm = SmVAR(var2_data).fit(2, trend="c")
        np.testing.assert_allclose(mine.intercept, sm.params[0], atol=1e-10)
        np.testing.assert_allclose(mine.coefs, sm.coefs, atol=1e-10)
        np.testing.assert_allclose(mine.sigma, sm.sigma_u_mle, atol=1e-10)
        assert mine.loglik == pytest.approx(sm.llf, abs=1e-8)

    def test_exact_lag_dependence_flags_degenerate(self):
        # second column is exactly the first one lagged, so that equation
        # fits with a unit coefficient and zero residual variance
        rng = np.random.default_rng(23)
        walk = np.cumsum(rng.standard_normal(121))
        data = np.column_stack([walk[1:], walk[:-1]])
        m = fit_var(data, 1)
        assert m.degenerate
        assert m.loglik == -math.inf
        np.testing.assert_allclose(m.coefs[0, 1], [1.0, 0.0], atol=1e-8)
        assert abs(m.intercept[1]) < 1e-8
        assert abs(m.sigma[1, 1]) < 1e-12

    def test_residuals_orthogonal_to_regressors(self, var2_data):
        m = fit_var(var2_data, 2)
        _, X = build_var_design(var2_data, 2)
        inner = X.T @ m.resid
        assert np.max(np.abs(inner)) < 1e-6

    def test_zero_variance_column_rejected(self):
        data = np.column_stack([np.ones(100), np.random.default_rng(1).standard_normal(100)])
        with pytest.raises(DegenerateInputError):
            fit_var(data, 1)

    def test_too_short_sample_rejected(self):
        with pytest.raises(InsufficientDataError):
            fit_var(np.random.default_rng(2).standard_normal((7, 2)), 3)

    def test_univariate_reduces_to_scalar_ar(self):
        rng = np.random.default_rng(24)
        y = np.zeros(300)
        for t in range(1, 300):
            y[t] = 0.2 + 0.6 * y[t - 1] + rng.standard_normal()
        m = fit_var(y, 1)
        X = np.column_stack([np.ones(299), y[:-1]])
        beta = np.linalg.lstsq(X, y[1:], rcond=None)[0]
        assert m.intercept[0] == pytest.approx(beta[0], abs=1e-10)
        assert m.coefs[0, 0, 0] == pytest.approx(beta[1], abs=1e-10)


def model_with(loglik, T, k=2, p=0, log_det_sigma=None):
    """VarModel shell carrying a chosen log-likelihood (formula checks)."""
    if log_det_sigma is None:
        log_det_sigma = -2.0 * loglik / T - k * math.log(2 * math.pi) - k
    sigma = np.eye(k) * math.exp(log_det_sigma / k)
    return VarModel(
        n_vars=k, n_lags=p, intercept=np.zeros(k),
        coefs=np.zeros((p, k, k)), sigma=sigma, nobs=T, loglik=loglik,
    )


class TestInformationCriteria:
    """Frozen against the published selection table (T = 608, k = 2)."""

    def test_lag0_row(self):
        ic = information_criteria(model_with(-1267.623, 608))
        assert ic.aic == pytest.approx(4.176391, abs=1e-6)
        assert ic.sc == pytest.approx(4.190899, abs=1e-6)
        assert ic.hq == pytest.approx(4.182035, abs=1e-6)
        assert ic.fpe == pytest.approx(0.223272, abs=1e-6)

    def test_lag2_aic(self):
        ic = information_criteria(model_with(1640.615, 608, p=2))
        assert ic.aic == pytest.approx(-5.363865, abs=1e-6)

    def test_zero_limit(self):
        ic = information_criteria(model_with(0.0, 100, k=1, p=0))
        # n = 1 mean parameter remains; pure -2*LogL term vanishes
        assert ic.aic == pytest.approx(2.0 / 100.0)

    def test_internal_consistency(self, var2_data):
        m = fit_var(var2_data, 3)
        ic = information_criteria(m)
        n = m.n_vars * (1 + m.n_vars * m.n_lags)
        assert ic.aic == pytest.approx((-2 * m.loglik + 2 * n) / m.nobs, rel=1e-12)
        assert ic.sc == pytest.approx(
            (-2 * m.loglik + n * math.log(m.nobs)) / m.nobs, rel=1e-12
        )
        assert ic.hq == pytest.approx(
            (-2 * m.loglik + 2 * n * math.log(math.log(m.nobs))) / m.nobs, rel=1e-12
        )


class TestSequentialLr:
    def test_published_lag1_vs_lag2(self):
        restricted = model_with(1611.688, 608, p=1)
        unrestricted = model_with(1640.615, 608, p=2)
        res = sequential_lr(restricted, unrestricted)
        assert res.statistic == pytest.approx(57.378, abs=5e-3)
        assert res.df == 4
        assert res.p_value < 0.05

    def test_identical_sigmas_give_zero(self, var2_data):
        m = fit_var(var2_data, 2)
        restricted = model_with(m.loglik, m.nobs, p=1)
        unrestricted = model_with(m.loglik, m.nobs, p=2)
        assert sequential_lr(restricted, unrestricted).statistic == pytest.approx(
            0.0, abs=1e-9
        )

    def test_sample_mismatch_rejected(self, var2_data):
        with pytest.raises(ComparisonError):
            sequential_lr(fit_var(var2_data, 1), fit_var(var2_data, 2))

    def test_size_when_true_lag_is_one(self):
        rate = mc_lr_size(400, 300, seed=8301)
        assert 0.91 <= rate <= 0.99


class TestSelectLag:
    def test_common_sample_and_monotone_loglik(self, var2_data):
        table = select_lag(var2_data, pmax=6)
        assert table.nobs == len(var2_data) - 6
        logliks = [row.loglik for row in table.rows]
        assert all(b >= a - 1e-8 for a, b in zip(logliks, logliks[1:]))

    def test_recovers_true_lag_two(self, var2_data):
        table = select_lag(var2_data, pmax=6)
        assert table.chosen["aic"] == 2
        assert table.chosen["sc"] == 2

    def test_strong_ar1_with_pmax_one(self):
        rng = np.random.default_rng(25)
        y = np.zeros((500, 1))
        for t in range(1, 500):
            y[t] = 0.9 * y[t - 1] + rng.standard_normal()
        table = select_lag(y, pmax=1)
        assert table.chosen["aic"] == 1

    def test_white_noise_chooses_zero_by_sc(self):
        root = np.random.SeedSequence(8302)
        zeros = 0
        reps = 60
        for child in root.spawn(reps):
            rng = np.random.default_rng(child)
            table = select_lag(rng.standard_normal((400, 2)), pmax=4)
            zeros += table.chosen["sc"] == 0
        assert zeros / reps >= 0.9

    def test_lr_star_is_last_significant(self, var2_data):
        table = select_lag(var2_data, pmax=6)
        significant = [
            row.lag
            for row in table.rows
            if row.lr_pvalue is not None and row.lr_pvalue < 0.05
        ]
        assert table.chosen["lr"] == max(significant)
