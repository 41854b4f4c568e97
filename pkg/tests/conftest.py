"""Shared fixtures: the synthetic dataset, one full pipeline run, Monte
Carlo studies (cached so module tests and the acceptance suite share one
computation), and the brute-force path-enumeration oracle.

Set SWITCHVAR_DATA_DIR to a directory holding real downloaded tsx.csv /
wti.csv files to run the data-dependent checks against live data instead of
the bundled fixture.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import multivariate_normal

from switchvar import msvar
from switchvar.ingest import DatasetConfig, SeriesSpec, load_dataset
from switchvar.johansen import johansen_test
from switchvar.pipeline import PipelineConfig, run_pipeline
from switchvar.synthetic import FIXTURE_SEED, write_fixture_csvs
from switchvar.unitroot import adf_test, kpss_test, pp_test
from switchvar.varbase import fit_var, sequential_lr


def _real_data_dir() -> Path | None:
    raw = os.environ.get("SWITCHVAR_DATA_DIR")
    if not raw:
        return None
    path = Path(raw)
    if (path / "tsx.csv").exists() and (path / "wti.csv").exists():
        return path
    return None


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory) -> Path:
    """Directory holding tsx.csv / wti.csv: real data when configured,
    otherwise the bundled synthetic fixture."""
    real = _real_data_dir()
    if real is not None:
        return real
    path = tmp_path_factory.mktemp("fixture_data")
    write_fixture_csvs(path, seed=FIXTURE_SEED)
    return path


@pytest.fixture(scope="session")
def dataset_config(data_dir) -> DatasetConfig:
    return DatasetConfig(
        series=(
            SeriesSpec(name="tsx", source=str(data_dir / "tsx.csv")),
            SeriesSpec(name="wti", source=str(data_dir / "wti.csv")),
        ),
        cache_dir=None,
        start=(1970, 1),
        end=(2021, 5),
    )


@pytest.fixture(scope="session")
def dataset(dataset_config):
    return load_dataset(dataset_config)


@pytest.fixture(scope="session")
def returns_matrix(dataset) -> np.ndarray:
    return np.diff(np.log(np.column_stack([s.values for s in dataset])), axis=0)


@pytest.fixture(scope="session")
def log_levels_matrix(dataset) -> np.ndarray:
    return np.log(np.column_stack([s.values for s in dataset]))


@pytest.fixture(scope="session")
def pipeline_config(dataset_config, tmp_path_factory) -> PipelineConfig:
    out = tmp_path_factory.mktemp("pipeline_out")
    return PipelineConfig(dataset=dataset_config, out_dir=out, seed=2024)


@pytest.fixture(scope="session")
def pipeline_bundle(pipeline_config):
    """One full pipeline run on the fixture dataset, shared session-wide."""
    return run_pipeline(pipeline_config)


# ---------------------------------------------------------------------------
# brute-force oracle for the Hamilton filter / Kim smoother


def enumeration_oracle(model: msvar.MsVarModel, data: np.ndarray):
    """Likelihood and smoothed marginals by exhaustive regime-path summation.

    Independent route: per-period densities come from scipy's multivariate
    normal, the path sum is a plain loop over itertools.product.
    """
    p, m = model.spec.n_lags, model.spec.n_regimes
    T_eff = len(data) - p
    dens = np.empty((T_eff, m))
    for t in range(T_eff):
        x = (
            np.concatenate([data[p + t - i] for i in range(1, p + 1)])
            if p
            else np.zeros(0)
        )
        for j in range(m):
            mean = model.intercepts[j] + (model.ar_flat() @ x if p else 0.0)
            dens[t, j] = multivariate_normal.pdf(
                data[p + t], mean=mean, cov=model.covariances[j]
            )
    first = model.transition.T @ model.initial_probs
    total = 0.0
    marginals = np.zeros((T_eff, m))
    for path in itertools.product(range(m), repeat=T_eff):
        weight = first[path[0]] * dens[0, path[0]]
        for t in range(1, T_eff):
            weight *= model.transition[path[t - 1], path[t]] * dens[t, path[t]]
        total += weight
        for t, state in enumerate(path):
            marginals[t, state] += weight
    return math.log(total), marginals / total


def random_small_model(rng: np.random.Generator, m=2, p=1, k=1, switching=None):
    """Random valid model for oracle comparisons."""
    if switching is None:
        switching = bool(rng.integers(0, 2))
    intercepts = rng.normal(0.0, 1.0, (m, k))
    ar = rng.uniform(-0.4, 0.4, (p, k, k)) / max(1, p)
    covs = np.empty((m, k, k))
    for j in range(m):
        root = rng.normal(0.0, 0.5, (k, k))
        covs[j] = root @ root.T + 0.4 * np.eye(k)
    if not switching:
        covs[:] = covs[0]
    P = rng.uniform(0.2, 1.0, (m, m))
    P /= P.sum(axis=1, keepdims=True)
    rho = rng.uniform(0.2, 1.0, m)
    rho /= rho.sum()
    return msvar.MsVarModel(
        msvar.MsVarSpec(m, p, k, switching), intercepts, ar, covs, P, rho
    )


# ---------------------------------------------------------------------------
# Monte Carlo studies (seeded, cached per session)


@functools.lru_cache(maxsize=None)
def mc_unitroot_size(test: str, n_reps: int, T: int, seed: int) -> float:
    """Rejection frequency at 5% under each test's null.

    ADF/PP run on driftless random walks (null true); KPSS runs on white
    noise (its null is stationarity).
    """
    root = np.random.SeedSequence(seed)
    rejections = 0
    for child in root.spawn(n_reps):
        rng = np.random.default_rng(child)
        shocks = rng.standard_normal(T)
        if test == "adf":
            rejections += adf_test(np.cumsum(shocks)).reject_at_5pct
        elif test == "pp":
            rejections += pp_test(np.cumsum(shocks)).reject_at_5pct
        elif test == "kpss":
            rejections += kpss_test(shocks).reject_at_5pct
        else:
            raise ValueError(test)
    return rejections / n_reps


@functools.lru_cache(maxsize=None)
def mc_adf_power(n_reps: int, T: int, seed: int) -> float:
    """Rejection frequency on white noise (unit-root null false)."""
    root = np.random.SeedSequence(seed)
    rejections = 0
    for child in root.spawn(n_reps):
        rng = np.random.default_rng(child)
        rejections += adf_test(rng.standard_normal(T)).reject_at_5pct
    return rejections / n_reps


@functools.lru_cache(maxsize=None)
def mc_johansen(kind: str, n_reps: int, T: int, seed: int) -> float:
    """Fraction of replications rejecting r = 0 at 5% (standard values).

    kind="cointegrated": y2 = y1 + small noise (power study).
    kind="independent": two independent random walks (size study).
    """
    root = np.random.SeedSequence(seed)
    rejections = 0
    for child in root.spawn(n_reps):
        rng = np.random.default_rng(child)
        walk = np.cumsum(rng.standard_normal(T))
        if kind == "cointegrated":
            other = walk + 0.5 * rng.standard_normal(T)
        elif kind == "independent":
            other = np.cumsum(rng.standard_normal(T))
        else:
            raise ValueError(kind)
        res = johansen_test(np.column_stack([walk, other]), p=2)
        rejections += res.decisions["standard"]["5%"][0]
    return rejections / n_reps


@functools.lru_cache(maxsize=None)
def mc_lr_size(n_reps: int, T: int, seed: int) -> float:
    """Fraction of lag-1-vs-lag-2 LR tests insignificant at 5% when the
    true lag is 1 (bivariate AR with moderate persistence)."""
    root = np.random.SeedSequence(seed)
    insignificant = 0
    A = np.array([[0.5, 0.1], [0.0, 0.4]])
    for child in root.spawn(n_reps):
        rng = np.random.default_rng(child)
        data = np.zeros((T, 2))
        shocks = rng.standard_normal((T, 2))
        for t in range(1, T):
            data[t] = A @ data[t - 1] + shocks[t]
        restricted = fit_var(data[1:], 1)
        unrestricted = fit_var(data, 2)
        insignificant += sequential_lr(restricted, unrestricted).p_value >= 0.05
    return insignificant / n_reps
