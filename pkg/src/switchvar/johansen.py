"""Johansen trace and maximum-eigenvalue cointegration tests.

The auxiliary regressions residualize the first differences (R0) and the
once-lagged levels (R1) on p-1 lagged differences plus the deterministic
terms; the eigenvalues of the product-moment problem
|lambda S11 - S10 S00^-1 S01| = 0 then give trace and max-eigenvalue
statistics. Two critical-value sets are carried: the standard
MacKinnon-Haug-Michelis (1996) table keyed by (k - r, deterministic spec),
and the rows printed in the source tables for the bivariate case, which are
internally inconsistent and therefore reported but never used alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from switchvar.errors import RankDeficiencyError
from switchvar.unitroot import DeterministicSpec

# MacKinnon-Haug-Michelis (1996) asymptotic critical values, rows indexed by
# n = k - r = 1..12, columns (90%, 95%, 99%). "constant" is the unrestricted
# constant case; "constant+trend" adds an unrestricted linear trend.
_TRACE_CRIT = {
    DeterministicSpec.CONSTANT: (
        (2.7055, 3.8415, 6.6349),
        (13.4294, 15.4943, 19.9349),
        (27.0669, 29.7961, 35.4628),
        (44.4929, 47.8545, 54.6815),
        (65.8202, 69.8189, 77.8202),
        (91.1090, 95.7542, 104.9637),
        (120.3673, 125.6185, 135.9825),
        (153.6341, 159.5290, 171.0905),
        (190.8714, 197.3772, 210.0366),
        (232.1030, 239.2468, 253.2526),
        (277.3740, 285.1402, 300.2821),
        (326.5354, 334.9795, 351.2150),
    ),
    DeterministicSpec.CONSTANT_TREND: (
        (2.7055, 3.8415, 6.6349),
        (16.1619, 18.3985, 23.1485),
        (32.0645, 35.0116, 41.0815),
        (51.6492, 55.2459, 62.5202),
        (75.1027, 79.3422, 87.7748),
        (102.4674, 107.3429, 116.9829),
        (133.7852, 139.2780, 150.0778),
        (169.0618, 175.1584, 187.1891),
        (208.3582, 215.1268, 228.2226),
        (251.6293, 259.0267, 273.3838),
        (298.8836, 306.8988, 322.4264),
        (350.1125, 358.7190, 375.3203),
    ),
}

_MAXEIG_CRIT = {
    DeterministicSpec.CONSTANT: (
        (2.7055, 3.8415, 6.6349),
        (12.2971, 14.2639, 18.5200),
        (18.8928, 21.1314, 25.8650),
        (25.1236, 27.5858, 32.7172),
        (31.2379, 33.8777, 39.3693),
        (37.2786, 40.0763, 45.8662),
        (43.2947, 46.2299, 52.3069),
        (49.2855, 52.3622, 58.6634),
        (55.2412, 58.4332, 64.9960),
        (61.2041, 64.5040, 71.2525),
        (67.1307, 70.5392, 77.4877),
        (73.0563, 76.5734, 83.7105),
    ),
    DeterministicSpec.CONSTANT_TREND: (
        (2.7055, 3.8415, 6.6349),
        (15.0006, 17.1481, 21.7465),
        (21.8731, 24.2522, 29.2631),
        (28.2398, 30.8151, 36.1930),
        (34.4202, 37.1646, 42.8612),
        (40.5244, 43.4183, 49.4095),
        (46.5583, 49.5875, 55.8171),
        (52.5858, 55.7302, 62.1741),
        (58.5316, 61.8051, 68.5030),
        (64.5292, 67.9040, 74.7434),
        (70.4630, 73.9355, 81.0678),
        (76.4081, 79.9878, 87.2395),
    ),
}

# Critical-value rows printed in the source analysis for the bivariate case
# (k = 2), kept for side-by-side reporting; see module docstring.
PAPER_CRIT_BIVARIATE = {
    "trace": {0: (7.52, 9.24, 12.97), 1: (17.85, 19.96, 24.60)},
    "maxeig": {0: (7.52, 9.24, 12.97), 1: (13.75, 15.67, 20.20)},
}

_LEVELS = ("10%", "5%", "1%")


@dataclass(frozen=True)
class JohansenResult:
    """Eigenvalues, statistics, critical values, and decisions per rank.

    Arrays are indexed by the rank hypothesis r = 0..k-1. ``decisions``
    maps critical-value source ("standard" or "paper") to a {level: tuple of
    reject flags} table, where rejecting hypothesis r means the data support
    rank greater than r.
    """

    eigenvalues: np.ndarray
    trace_stats: np.ndarray
    maxeig_stats: np.ndarray
    crit_trace: dict[str, tuple[tuple[float, float, float], ...]]
    crit_maxeig: dict[str, tuple[tuple[float, float, float], ...]]
    decisions: dict[str, dict[str, tuple[bool, ...]]]
    n_lags: int
    nobs: int
    deterministic: DeterministicSpec

    def cointegration_rank(self, level: str = "5%", source: str = "standard") -> int:
        """Smallest rank hypothesis not rejected by the trace test."""
        flags = self.decisions[source][level]
        for r, rejected in enumerate(flags):
            if not rejected:
                return r
        return len(flags)


def _residualize(Y: np.ndarray, Z: np.ndarray) -> np.ndarray:
    beta, _, rank, _ = np.linalg.lstsq(Z, Y, rcond=None)
    if rank < Z.shape[1]:
        raise RankDeficiencyError("johansen_test: singular auxiliary regressors")
    return Y - Z @ beta


def johansen_test(
    levels,
    p: int,
    det: DeterministicSpec = DeterministicSpec.CONSTANT,
) -> JohansenResult:
    """Run the Johansen rank test on level data with VAR lag order ``p``.

    ``levels`` is a T x k array with k >= 2; ``p`` is the lag order of the
    levels VAR, so p-1 lagged differences enter the auxiliary regressions.
    """
    levels = np.asarray(levels, dtype=float)
    if levels.ndim != 2 or levels.shape[1] < 2:
        raise ValueError("johansen_test: need a T x k array with k >= 2")
    if p < 1:
        raise ValueError("johansen_test: lag order must be at least 1")
    T_full, k = levels.shape
    dy = np.diff(levels, axis=0)  # (T_full - 1, k)
    # rows t = p..T_full-1: dy_t on [dy_{t-1}.., dy_{t-p+1}, det], y_{t-1} on same
    n = T_full - p
    if n <= k * p + 2:
        raise RankDeficiencyError("johansen_test: too few observations for the lag order")
    Y0 = dy[p - 1 :]
    Y1 = levels[p - 1 : T_full - 1]
    blocks = [np.ones((n, 1))]
    if det is DeterministicSpec.CONSTANT_TREND:
        blocks.append(np.arange(1.0, n + 1.0)[:, None])
    for j in range(1, p):
        blocks.append(dy[p - 1 - j : dy.shape[0] - j])
    Z = np.hstack(blocks)

    R0 = _residualize(Y0, Z)
    R1 = _residualize(Y1, Z)
    S00 = R0.T @ R0 / n
    S11 = R1.T @ R1 / n
    S01 = R0.T @ R1 / n
    try:
        s00_inv_s01 = np.linalg.solve(S00, S01)
    except np.linalg.LinAlgError:
        raise RankDeficiencyError("johansen_test: singular S00") from None
    M = S01.T @ s00_inv_s01  # S10 S00^-1 S01, symmetric PSD
    M = 0.5 * (M + M.T)
    try:
        eigvals = scipy.linalg.eigh(M, 0.5 * (S11 + S11.T), eigvals_only=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
        raise RankDeficiencyError("johansen_test: singular S11") from None
    lam = np.clip(np.sort(eigvals)[::-1], 0.0, 1.0 - 1e-15)

    log1m = np.log(1.0 - lam)
    trace = -n * np.cumsum(log1m[::-1])[::-1]
    maxeig = -n * log1m

    crit_trace = {"standard": tuple(_TRACE_CRIT[det][k - r - 1] for r in range(k))}
    crit_maxeig = {"standard": tuple(_MAXEIG_CRIT[det][k - r - 1] for r in range(k))}
    if k == 2:
        crit_trace["paper"] = tuple(PAPER_CRIT_BIVARIATE["trace"][r] for r in range(k))
        crit_maxeig["paper"] = tuple(PAPER_CRIT_BIVARIATE["maxeig"][r] for r in range(k))

    decisions = {
        source: {
            level: tuple(trace[r] > cvs[r][i] for r in range(k))
            for i, level in enumerate(_LEVELS)
        }
        for source, cvs in crit_trace.items()
    }
    return JohansenResult(
        eigenvalues=lam,
        trace_stats=trace,
        maxeig_stats=maxeig,
        crit_trace=crit_trace,
        crit_maxeig=crit_maxeig,
        decisions=decisions,
        n_lags=p,
        nobs=n,
        deterministic=det,
    )
