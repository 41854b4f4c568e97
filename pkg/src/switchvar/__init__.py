"""Markov-switching VAR toolkit for monthly stock-index and oil-price data.

Subpackages follow the analysis chain: ingest -> descriptive -> unitroot ->
varbase -> johansen -> msvar, orchestrated end to end by pipeline/cli.
"""

from switchvar.descriptive import DescriptiveStats, ReturnSeries, jarque_bera, log_returns, summarize
from switchvar.ingest import (
    DatasetConfig,
    PriceSeries,
    SeriesSpec,
    align_series,
    fetch_remote,
    load_dataset,
    parse_csv,
)
from switchvar.johansen import JohansenResult, johansen_test
from switchvar.msvar import (
    FilterOutput,
    FitDiagnostics,
    MsVarModel,
    MsVarSpec,
    SmoothedOutput,
    classify_regimes,
    em_step,
    ergodic_distribution,
    expected_durations,
    fit,
    from_var_model,
    hamilton_filter,
    kim_smoother,
    model_aic,
    regime_conditional_density,
    simulate,
)
from switchvar.unitroot import DeterministicSpec, UnitRootResult, adf_test, kpss_test, pp_test
from switchvar.varbase import (
    LagSelectionTable,
    VarModel,
    fit_var,
    information_criteria,
    select_lag,
    sequential_lr,
)

__version__ = "0.1.0"
