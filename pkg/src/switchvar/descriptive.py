"""Log returns, summary statistics, and the Jarque-Bera normality test.

Conventions: standard deviation uses divisor n-1; skewness and kurtosis are
built from central moments with divisor n; kurtosis is raw (normal = 3), and
the Jarque-Bera statistic uses the raw-kurtosis form (n/6)(S^2 + (K-3)^2/4)
with the chi-square(2) tail probability exp(-JB/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from switchvar.errors import (
    DegenerateInputError,
    InsufficientDataError,
    SeriesValidationError,
)
from switchvar.ingest import Month, PriceSeries


@dataclass(frozen=True)
class ReturnSeries:
    """Log returns of a :class:`PriceSeries`; one observation shorter."""

    name: str
    periods: tuple[Month, ...]
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if len(self.periods) != len(self.values):
            raise SeriesValidationError(
                f"{self.name}: {len(self.periods)} periods vs {len(self.values)} values"
            )
        if not np.all(np.isfinite(self.values)):
            raise SeriesValidationError(f"{self.name}: returns must be finite")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DescriptiveStats:
    """Summary statistics of one series (Table-3-style row set)."""

    mean: float
    median: float
    maximum: float
    minimum: float
    std: float
    skewness: float
    kurtosis: float
    jarque_bera: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise DegenerateInputError("count must be at least 2")
        if not self.minimum <= self.median <= self.maximum:
            raise DegenerateInputError("min <= median <= max violated")
        if self.std < 0:
            raise DegenerateInputError("negative standard deviation")


def log_returns(levels: PriceSeries) -> ReturnSeries:
    """r_t = ln(P_t / P_{t-1}); output starts one month after the input."""
    values = np.asarray(levels.values, dtype=float)
    if values.size < 2:
        raise InsufficientDataError(f"{levels.name}: need at least 2 levels")
    if np.any(values <= 0):
        raise DegenerateInputError(f"{levels.name}: non-positive level")
    returns = np.diff(np.log(values))
    return ReturnSeries(
        name=f"{levels.name}_return",
        periods=levels.periods[1:],
        values=returns,
    )


def _extract_values(values) -> np.ndarray:
    if hasattr(values, "values"):
        values = values.values
    return np.asarray(values, dtype=float)


def summarize(values) -> DescriptiveStats:
    """Compute the full Table-3-style statistics block for one series.

    Accepts a plain sequence/array, a :class:`PriceSeries`, or a
    :class:`ReturnSeries`. Raises :class:`DegenerateInputError` when the
    variance is zero (skewness/kurtosis undefined).
    """
    x = _extract_values(values)
    n = x.size
    if n < 2:
        raise InsufficientDataError("need at least 2 observations")
    if not np.all(np.isfinite(x)):
        raise DegenerateInputError("non-finite values")
    mean = float(np.mean(x))
    centered = x - mean
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        raise DegenerateInputError("zero variance: moment ratios undefined")
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    skew = m3 / m2**1.5
    kurt = m4 / m2**2
    jb = _jarque_bera_statistic(n, skew, kurt)
    return DescriptiveStats(
        mean=mean,
        median=float(np.median(x)),
        maximum=float(np.max(x)),
        minimum=float(np.min(x)),
        std=float(np.std(x, ddof=1)),
        skewness=skew,
        kurtosis=kurt,
        jarque_bera=jb,
        count=n,
    )


def _jarque_bera_statistic(n: int, skewness: float, kurtosis: float) -> float:
    return (n / 6.0) * (skewness**2 + (kurtosis - 3.0) ** 2 / 4.0)


def jarque_bera(stats: DescriptiveStats) -> tuple[float, float]:
    """Jarque-Bera statistic and its chi-square(2) p-value exp(-JB/2)."""
    jb = _jarque_bera_statistic(stats.count, stats.skewness, stats.kurtosis)
    return jb, math.exp(-jb / 2.0)
