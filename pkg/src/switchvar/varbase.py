"""Linear VAR(p) estimation by least squares and lag-order selection.

Conventions (fixed so the selection table is exactly reproducible): the
residual covariance uses divisor T (not T minus parameters); the Gaussian
log-likelihood is -(T/2)(k ln 2pi + ln det Sigma + k); information criteria
are per-observation with n = k(1 + kp) estimated mean parameters; FPE is
det(Sigma) ((T+q)/(T-q))^k with q = 1 + kp per-equation parameters; the
sequential LR statistic is (T - q_unrestricted)(ln det Sigma_restricted -
ln det Sigma_unrestricted) against chi-square(k^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import stats

from switchvar.errors import (
    ComparisonError,
    DegenerateInputError,
    InsufficientDataError,
    RankDeficiencyError,
)

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class VarModel:
    """Fitted VAR(p): y_t = a + A_1 y_{t-1} + ... + A_p y_{t-p} + e_t."""

    n_vars: int
    n_lags: int
    intercept: np.ndarray  # (k,)
    coefs: np.ndarray  # (p, k, k); coefs[i] multiplies y_{t-1-i}
    sigma: np.ndarray  # (k, k), divisor-T residual covariance
    nobs: int  # effective sample size T
    loglik: float
    degenerate: bool = False
    resid: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if not self.degenerate and not math.isfinite(self.loglik):
            raise DegenerateInputError("non-finite log-likelihood in a regular fit")


class InfoCriteria(NamedTuple):
    aic: float
    sc: float
    hq: float
    fpe: float


class LrTestResult(NamedTuple):
    statistic: float
    df: int
    p_value: float


def build_var_design(data: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(Y, X) for the common least-squares problem; X = [1, y_{t-1}.., y_{t-p}]."""
    data = np.atleast_2d(np.asarray(data, dtype=float))
    if data.ndim != 2:
        raise ValueError("data must be a T x k array")
    T = data.shape[0]
    Y = data[p:]
    blocks = [np.ones((T - p, 1))]
    for i in range(1, p + 1):
        blocks.append(data[p - i : T - i])
    return Y, np.hstack(blocks)


def fit_var(data, p: int) -> VarModel:
    """Equation-by-equation least squares on the common regressor matrix.

    Exact linear dependence in the data (zero residual covariance) is not an
    error: the model comes back with ``degenerate=True`` and loglik -inf.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    T_full, k = data.shape
    if T_full - p <= k * p + 1:
        raise InsufficientDataError(
            f"fit_var: {T_full} observations cannot support lag {p} with {k} variables"
        )
    if np.any(np.ptp(data, axis=0) == 0.0):
        raise DegenerateInputError("fit_var: zero-variance column")

    Y, X = build_var_design(data, p)
    q = X.shape[1]
    if np.linalg.matrix_rank(X.T @ X) < q:
        raise RankDeficiencyError("fit_var: singular regressor cross-product")
    beta, _, _, _ = np.linalg.lstsq(X, Y, rcond=None)  # (q, k)
    resid = Y - X @ beta
    T = Y.shape[0]
    sigma = resid.T @ resid / T

    eigvals = np.linalg.eigvalsh(sigma)
    degenerate = eigvals[0] <= max(eigvals[-1], 1.0) * 1e-12
    if degenerate:
        loglik = -math.inf
    else:
        _, logdet = np.linalg.slogdet(sigma)
        loglik = -0.5 * T * (k * LOG_2PI + logdet + k)
    intercept = beta[0].copy()
    coefs = np.stack(
        [beta[1 + i * k : 1 + (i + 1) * k].T for i in range(p)]
    ) if p > 0 else np.empty((0, k, k))
    return VarModel(
        n_vars=k,
        n_lags=p,
        intercept=intercept,
        coefs=coefs,
        sigma=sigma,
        nobs=T,
        loglik=loglik,
        degenerate=degenerate,
        resid=resid,
    )


def information_criteria(m: VarModel) -> InfoCriteria:
    """Per-observation AIC/SC/HQ and FPE for a fitted VAR."""
    k, p, T = m.n_vars, m.n_lags, m.nobs
    n = k * (1 + k * p)
    q = 1 + k * p
    aic = (-2.0 * m.loglik + 2.0 * n) / T
    sc = (-2.0 * m.loglik + n * math.log(T)) / T
    hq = (-2.0 * m.loglik + 2.0 * n * math.log(math.log(T))) / T
    sign, logdet = np.linalg.slogdet(m.sigma)
    det = sign * math.exp(logdet) if math.isfinite(logdet) else 0.0
    fpe = det * ((T + q) / (T - q)) ** k
    return InfoCriteria(aic=aic, sc=sc, hq=hq, fpe=fpe)


def sequential_lr(restricted: VarModel, unrestricted: VarModel) -> LrTestResult:
    """Modified likelihood-ratio test of lag p-1 against lag p."""
    if restricted.n_vars != unrestricted.n_vars:
        raise ComparisonError("models have different variable counts")
    if unrestricted.n_lags != restricted.n_lags + 1:
        raise ComparisonError("unrestricted model must have exactly one more lag")
    if restricted.nobs != unrestricted.nobs:
        raise ComparisonError(
            "models were fit on different samples "
            f"({restricted.nobs} vs {unrestricted.nobs} observations)"
        )
    k = unrestricted.n_vars
    q_u = 1 + k * unrestricted.n_lags
    _, logdet_r = np.linalg.slogdet(restricted.sigma)
    _, logdet_u = np.linalg.slogdet(unrestricted.sigma)
    stat = (unrestricted.nobs - q_u) * (logdet_r - logdet_u)
    df = k * k
    return LrTestResult(statistic=float(stat), df=df, p_value=float(stats.chi2.sf(stat, df)))


@dataclass(frozen=True)
class LagOrderRow:
    lag: int
    loglik: float
    lr: float | None
    lr_pvalue: float | None
    fpe: float
    aic: float
    sc: float
    hq: float


@dataclass(frozen=True)
class LagSelectionTable:
    """All candidate lags fit on one common sample, with per-criterion picks."""

    rows: tuple[LagOrderRow, ...]
    nobs: int  # common sample size T = n_obs - pmax
    chosen: dict[str, int]  # criterion name -> starred lag

    def row(self, lag: int) -> LagOrderRow:
        return self.rows[lag]


def select_lag(data, pmax: int, lr_level: float = 0.05) -> LagSelectionTable:
    """Fit lags 0..pmax on the common sample and star each criterion's pick.

    The first pmax observations are reserved as initial conditions for every
    candidate so the criteria are comparable. Criterion ties break toward
    the smaller lag; the LR column stars the last significant sequential
    test at ``lr_level``.
    """
    if pmax < 1:
        raise ValueError("pmax must be at least 1")
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]

    models = [fit_var(data[pmax - p :], p) for p in range(pmax + 1)]
    rows = []
    lr_chosen = None
    for p, m in enumerate(models):
        ic = information_criteria(m)
        lr = lr_p = None
        if p >= 1:
            test = sequential_lr(models[p - 1], m)
            lr, lr_p = test.statistic, test.p_value
            if lr_p < lr_level:
                lr_chosen = p
        rows.append(
            LagOrderRow(
                lag=p, loglik=m.loglik, lr=lr, lr_pvalue=lr_p,
                fpe=ic.fpe, aic=ic.aic, sc=ic.sc, hq=ic.hq,
            )
        )

    chosen = {
        name: int(np.argmin([getattr(r, name) for r in rows]))
        for name in ("fpe", "aic", "sc", "hq")
    }
    if lr_chosen is not None:
        chosen["lr"] = lr_chosen
    return LagSelectionTable(rows=tuple(rows), nobs=models[0].nobs, chosen=chosen)
