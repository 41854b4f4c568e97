"""ADF, Phillips-Perron, and KPSS stationarity tests.

ADF and PP p-values come from the MacKinnon (1994, updated 2010) response
surface for a single series, embedded below for the constant and
constant+trend cases. KPSS is compared against the standard published
critical values (Kwiatkowski, Phillips, Schmidt & Shin 1992, Table 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import ndtr

from switchvar.errors import DegenerateInputError, InsufficientDataError


class DeterministicSpec(str, Enum):
    """Deterministic terms included in the test regressions."""

    CONSTANT = "constant"
    CONSTANT_TREND = "constant+trend"


# MacKinnon tau response-surface coefficients, single-series case.
# z = polynomial(stat); p = Phi(z). Small-p polynomial applies for
# stat <= tau_star, large-p otherwise; outside [tau_min, tau_max] the
# p-value saturates at 0 or 1.
_MACKINNON = {
    DeterministicSpec.CONSTANT: {
        "star": -1.61,
        "min": -18.83,
        "max": 2.74,
        "smallp": (2.1659, 1.4412, 0.038269),
        "largep": (1.7339, 0.93202, -0.12745, -0.010368),
    },
    DeterministicSpec.CONSTANT_TREND: {
        "star": -2.89,
        "min": -16.18,
        "max": 0.7,
        "smallp": (3.2512, 1.6047, 0.049588),
        "largep": (2.5261, 0.61654, -0.37956, -0.060285),
    },
}

KPSS_CRITICAL_VALUES = {
    DeterministicSpec.CONSTANT: {"10%": 0.347, "5%": 0.463, "2.5%": 0.574, "1%": 0.739},
    DeterministicSpec.CONSTANT_TREND: {
        "10%": 0.119,
        "5%": 0.146,
        "2.5%": 0.176,
        "1%": 0.216,
    },
}


@dataclass(frozen=True)
class UnitRootResult:
    """Outcome of one stationarity test.

    ``reject_at_5pct`` rejects the test's own null: a unit root for ADF/PP,
    stationarity for KPSS. ``lags`` is the augmentation lag order for ADF
    and the long-run-variance bandwidth for PP/KPSS. ``p_value`` is absent
    for KPSS, which instead carries the critical-value table.
    """

    test: str
    statistic: float
    p_value: float | None
    lags: int
    deterministic: DeterministicSpec
    null_hypothesis: str
    reject_at_5pct: bool
    critical_values: dict[str, float] | None = None

    def __post_init__(self):
        if self.lags < 0:
            raise ValueError("lags must be nonnegative")
        if self.p_value is not None and not 0.0 <= self.p_value <= 1.0:
            raise ValueError("p-value outside [0, 1]")


def mackinnon_pvalue(stat: float, det: DeterministicSpec) -> float:
    """Approximate asymptotic p-value of a Dickey-Fuller tau statistic."""
    table = _MACKINNON[det]
    if stat > table["max"]:
        return 1.0
    if stat < table["min"]:
        return 0.0
    coeffs = table["smallp"] if stat <= table["star"] else table["largep"]
    z = sum(c * stat**i for i, c in enumerate(coeffs))
    return float(ndtr(z))


def default_adf_max_lags(nobs: int) -> int:
    """Schwert rule: floor(12 * (T/100)^(1/4))."""
    return int(math.floor(12.0 * (nobs / 100.0) ** 0.25))


def default_bandwidth(nobs: int) -> int:
    """Newey-West/Bartlett rule: floor(4 * (T/100)^(2/9))."""
    return int(math.floor(4.0 * (nobs / 100.0) ** (2.0 / 9.0)))


def _check_series(x: np.ndarray, min_len: int, context: str) -> None:
    if x.size < min_len:
        raise InsufficientDataError(f"{context}: need more than {min_len - 1} observations")
    if np.ptp(x) == 0.0:
        raise DegenerateInputError(f"{context}: constant series")


def _deterministic_columns(n: int, det: DeterministicSpec) -> np.ndarray:
    cols = [np.ones(n)]
    if det is DeterministicSpec.CONSTANT_TREND:
        cols.append(np.arange(1.0, n + 1.0))
    return np.column_stack(cols)


def _ols_tstat(y: np.ndarray, X: np.ndarray, coef_index: int):
    """OLS fit returning (beta, resid, t-stat and std error of one coefficient)."""
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise DegenerateInputError("collinear regressors in test regression")
    resid = y - X @ beta
    dof = X.shape[0] - X.shape[1]
    s2 = resid @ resid / dof
    xtx_inv = np.linalg.inv(X.T @ X)
    se = math.sqrt(s2 * xtx_inv[coef_index, coef_index])
    return beta, resid, beta[coef_index] / se, se


def _bartlett_lrv(u: np.ndarray, bandwidth: int) -> float:
    """Newey-West long-run variance with Bartlett weights, divisor len(u)."""
    n = u.size
    lrv = u @ u / n
    for j in range(1, bandwidth + 1):
        w = 1.0 - j / (bandwidth + 1.0)
        lrv += 2.0 * w * (u[j:] @ u[:-j]) / n
    return float(lrv)


def adf_test(
    x,
    det: DeterministicSpec = DeterministicSpec.CONSTANT,
    max_lags: int | None = None,
) -> UnitRootResult:
    """Augmented Dickey-Fuller test with AIC lag selection.

    The augmentation lag is chosen by minimizing AIC over 0..max_lags on a
    common sample (max_lags initial rows reserved), then the statistic is
    recomputed on the longest sample the chosen lag allows. ``max_lags``
    defaults to the Schwert rule.
    """
    x = np.asarray(x, dtype=float)
    if max_lags is None:
        max_lags = default_adf_max_lags(x.size)
    _check_series(x, max_lags + 11, "adf_test")

    dx = np.diff(x)

    def regression(lag: int, start: int):
        # rows t = start..len(dx)-1 of: dx_t ~ x_{t-1} + dx_{t-1..t-lag} + det
        y = dx[start:]
        cols = [x[start : x.size - 1]]
        for j in range(1, lag + 1):
            cols.append(dx[start - j : dx.size - j])
        X = np.column_stack(cols + [_deterministic_columns(y.size, det)])
        return y, X

    best_lag, best_aic = 0, math.inf
    for lag in range(max_lags + 1):
        y, X = regression(lag, max_lags)
        _, resid, _, _ = _ols_tstat(y, X, 0)
        n = y.size
        aic = n * math.log(resid @ resid / n) + 2 * X.shape[1]
        if aic < best_aic - 1e-14:
            best_lag, best_aic = lag, aic

    y, X = regression(best_lag, best_lag)
    _, _, tstat, _ = _ols_tstat(y, X, 0)
    p = mackinnon_pvalue(tstat, det)
    return UnitRootResult(
        test="ADF",
        statistic=float(tstat),
        p_value=p,
        lags=best_lag,
        deterministic=det,
        null_hypothesis="unit root",
        reject_at_5pct=p < 0.05,
    )


def pp_test(
    x,
    det: DeterministicSpec = DeterministicSpec.CONSTANT,
    bandwidth: int | None = None,
) -> UnitRootResult:
    """Phillips-Perron Z-tau test.

    The plain Dickey-Fuller regression (no augmentation) is corrected with a
    Newey-West/Bartlett long-run variance; with bandwidth 0 the statistic
    reduces to the unaugmented Dickey-Fuller t-ratio.
    """
    x = np.asarray(x, dtype=float)
    _check_series(x, 21, "pp_test")
    if bandwidth is None:
        bandwidth = default_bandwidth(x.size)

    # levels form: x_t ~ rho * x_{t-1} + det; tau = (rho - 1)/se
    y = x[1:]
    X = np.column_stack([x[:-1], _deterministic_columns(y.size, det)])
    beta, u, _, se = _ols_tstat(y, X, 0)
    n = y.size
    k = X.shape[1]
    s2 = float(u @ u) / (n - k)
    gamma0 = float(u @ u) / n
    lam2 = _bartlett_lrv(u, bandwidth)
    tau = (beta[0] - 1.0) / se
    stat = math.sqrt(gamma0 / lam2) * tau - (lam2 - gamma0) * n * se / (
        2.0 * math.sqrt(lam2) * math.sqrt(s2)
    )
    p = mackinnon_pvalue(stat, det)
    return UnitRootResult(
        test="Phillips-Perron",
        statistic=float(stat),
        p_value=p,
        lags=bandwidth,
        deterministic=det,
        null_hypothesis="unit root",
        reject_at_5pct=p < 0.05,
    )


def kpss_test(
    x,
    det: DeterministicSpec = DeterministicSpec.CONSTANT,
    bandwidth: int | None = None,
) -> UnitRootResult:
    """KPSS test of the null of (trend-)stationarity.

    statistic = T^-2 * sum of squared partial sums of the demeaned (or
    detrended) series, scaled by its Newey-West long-run variance. The
    decision compares against the embedded critical values; rejection means
    rejecting stationarity.
    """
    x = np.asarray(x, dtype=float)
    _check_series(x, 21, "kpss_test")
    if bandwidth is None:
        bandwidth = default_bandwidth(x.size)

    n = x.size
    D = _deterministic_columns(n, det)
    beta, _, rank, _ = np.linalg.lstsq(D, x, rcond=None)
    if rank < D.shape[1]:
        raise DegenerateInputError("kpss_test: collinear deterministic terms")
    e = x - D @ beta
    partial = np.cumsum(e)
    lrv = _bartlett_lrv(e, bandwidth)
    if lrv <= 0:
        raise DegenerateInputError("kpss_test: nonpositive long-run variance")
    stat = float(partial @ partial) / (n**2 * lrv)
    crit = KPSS_CRITICAL_VALUES[det]
    return UnitRootResult(
        test="KPSS",
        statistic=stat,
        p_value=None,
        lags=bandwidth,
        deterministic=det,
        null_hypothesis="stationarity",
        reject_at_5pct=stat > crit["5%"],
        critical_values=dict(crit),
    )
