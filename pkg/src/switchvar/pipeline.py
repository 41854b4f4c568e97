"""End-to-end pipeline: ingest -> returns/stats -> unit roots -> lag
selection -> cointegration -> regime estimation -> report bundle.

Everything is driven by a :class:`PipelineConfig`; one run writes, under the
output directory: ``results.json`` (machine-readable document, updated after
every stage so partial output survives failures), ``report.txt`` (rendered
tables), and ``plots/`` (delimiter-separated probability and series data,
plus SVG renderings). Two runs with the same configuration and cached inputs
are byte-identical: stage and restart seeds derive from the master seed, and
no wall-clock entropy enters any output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from switchvar import msvar
from switchvar.descriptive import ReturnSeries, jarque_bera, log_returns, summarize
from switchvar.errors import (
    ConfigError,
    OutputError,
    PipelineStageError,
    SwitchvarError,
)
from switchvar.ingest import (
    DatasetConfig,
    Month,
    PriceSeries,
    SeriesSpec,
    _cache_path,
    file_sha256,
    load_dataset,
    month_str,
)
from switchvar.johansen import johansen_test
from switchvar.msvar import MsVarModel, MsVarSpec
from switchvar.report import render_tables
from switchvar.unitroot import DeterministicSpec, adf_test, kpss_test, pp_test
from switchvar.varbase import select_lag

# stage name -> process exit code on failure
STAGE_EXIT_CODES = {
    "ingest": 2,
    "descriptive": 3,
    "unit-root": 3,
    "lag-selection": 3,
    "johansen": 3,
    "msvar-univariate": 3,
    "msvar-bivariate": 3,
    "analytics": 3,
    "output": 4,
}

_STAGE_SEED_KEYS = {"msvar-univariate": 11, "msvar-bivariate": 12}


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one pipeline run depends on.

    The master ``seed`` deterministically derives per-stage and per-candidate
    seeds, so stages can be rerun in isolation with identical results.
    """

    dataset: DatasetConfig
    out_dir: Path
    pmax: int = 8
    regimes: int = 2
    lags: int = 2
    switching_cov: bool = False
    candidates: tuple[MsVarSpec, ...] = (
        MsVarSpec(2, 1, 2, False),
        MsVarSpec(2, 2, 2, False),
        MsVarSpec(2, 2, 2, True),
    )
    tolerance: float = 1e-8
    max_iter: int = 500
    restarts: int = 3
    seed: int = 0
    refetch: bool = False

    def __post_init__(self):
        if self.pmax < 1:
            raise ConfigError("pmax must be at least 1")
        if not self.candidates:
            raise ConfigError("at least one bivariate candidate spec is required")
        if self.regimes < 2:
            raise ConfigError("regimes must be at least 2")

    def stage_seed(self, stage: str, sub: int = 0) -> int:
        key = _STAGE_SEED_KEYS[stage]
        ss = np.random.SeedSequence(self.seed, spawn_key=(key, sub))
        return int(ss.generate_state(1)[0])


@dataclass
class ReportBundle:
    """Outputs of one pipeline run; the rendered report derives from
    ``results`` so the two can never disagree."""

    results: dict
    report_text: str
    out_dir: Path
    paths: dict[str, Path] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# configuration file: flat "key = value" lines, # comments


_CONFIG_SCHEMA = {
    "pmax": int,
    "seed": int,
    "max_iter": int,
    "restarts": int,
    "regimes": int,
    "lags": int,
    "tolerance": float,
    "switching-cov": bool,
    "refetch": bool,
    "out": str,
    "cache_dir": str,
    "start": str,
    "end": str,
    "candidates": str,
}


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {raw!r}")


def _parse_month(raw: str) -> Month:
    parts = raw.strip().split("-")
    if len(parts) != 2:
        raise ConfigError(f"expected YYYY-MM, got {raw!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigError(f"expected YYYY-MM, got {raw!r}") from None


def parse_candidates(raw: str) -> tuple[MsVarSpec, ...]:
    """Parse "m:p:i, m:p:h" triplets; 'i' = shared covariance, 'h' = switching."""
    specs = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 3 or parts[2].strip().lower() not in ("i", "h"):
            raise ConfigError(f"bad candidate spec {chunk!r}; expected m:p:i or m:p:h")
        try:
            m, p = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"bad candidate spec {chunk!r}") from None
        specs.append(MsVarSpec(m, p, 2, parts[2].strip().lower() == "h"))
    if not specs:
        raise ConfigError("empty candidate list")
    return tuple(specs)


def read_config_file(path: Path | str) -> dict[str, str]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"configuration file not found: {path}")
    values: dict[str, str] = {}
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
        key, _, raw = stripped.partition("=")
        values[key.strip()] = raw.strip()
    return values


def build_config(
    values: dict[str, str], overrides: dict[str, object] | None = None
) -> PipelineConfig:
    """Assemble a :class:`PipelineConfig` from file values plus CLI overrides."""
    merged = dict(values)
    for key, val in (overrides or {}).items():
        if val is not None:
            merged[key] = str(val)

    series = []
    for idx in (1, 2):
        prefix = f"series{idx}."
        name = merged.get(prefix + "name")
        source = merged.get(prefix + "source")
        if name is None or source is None:
            raise ConfigError(f"missing {prefix}name / {prefix}source")
        series.append(
            SeriesSpec(
                name=name,
                source=source,
                date_column=merged.get(prefix + "date_column", "date"),
                value_column=merged.get(prefix + "value_column", "value"),
            )
        )

    typed: dict[str, object] = {}
    for key, caster in _CONFIG_SCHEMA.items():
        if key not in merged:
            continue
        raw = merged[key]
        try:
            typed[key] = _parse_bool(raw) if caster is bool else caster(raw)
        except (ValueError, ConfigError) as exc:
            raise ConfigError(f"bad value for {key!r}: {raw!r} ({exc})") from None

    if "out" not in typed:
        raise ConfigError("missing required key 'out' (output directory)")

    dataset = DatasetConfig(
        series=tuple(series),
        cache_dir=Path(typed["cache_dir"]) if "cache_dir" in typed else None,
        start=_parse_month(typed["start"]) if "start" in typed else None,
        end=_parse_month(typed["end"]) if "end" in typed else None,
    )
    kwargs: dict[str, object] = {"dataset": dataset, "out_dir": Path(typed["out"])}
    for key in ("pmax", "seed", "max_iter", "restarts", "regimes", "lags", "refetch"):
        if key in typed:
            kwargs[key] = typed[key]
    if "tolerance" in typed:
        kwargs["tolerance"] = typed["tolerance"]
    if "switching-cov" in typed:
        kwargs["switching_cov"] = typed["switching-cov"]
    if "candidates" in typed:
        kwargs["candidates"] = parse_candidates(str(typed["candidates"]))
    return PipelineConfig(**kwargs)


# ---------------------------------------------------------------------------
# serialization helpers


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonify(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, DeterministicSpec):
        return obj.value
    return obj


def _stats_dict(stats, jb_p: float) -> dict:
    return {
        "mean": stats.mean,
        "median": stats.median,
        "maximum": stats.maximum,
        "minimum": stats.minimum,
        "std": stats.std,
        "skewness": stats.skewness,
        "kurtosis": stats.kurtosis,
        "jarque_bera": stats.jarque_bera,
        "jarque_bera_pvalue": jb_p,
        "count": stats.count,
    }


def _unitroot_dict(res) -> dict:
    return {
        "test": res.test,
        "statistic": res.statistic,
        "p_value": res.p_value,
        "lags": res.lags,
        "deterministic": res.deterministic.value,
        "null_hypothesis": res.null_hypothesis,
        "reject_at_5pct": res.reject_at_5pct,
        "critical_values": res.critical_values,
    }


def _model_dict(model: MsVarModel) -> dict:
    return {
        "spec": {
            "n_regimes": model.spec.n_regimes,
            "n_lags": model.spec.n_lags,
            "n_vars": model.spec.n_vars,
            "switching_covariance": model.spec.switching_covariance,
            "n_params": model.spec.n_params,
        },
        "intercepts": model.intercepts,
        "ar_coefs": model.ar_coefs,
        "covariances": model.covariances,
        "transition": model.transition,
        "initial_probs": model.initial_probs,
    }


def results_json(results: dict) -> str:
    return json.dumps(_jsonify(results), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# plot data


def emit_probability_plot_data(
    filter_output: msvar.FilterOutput,
    smoothed: msvar.SmoothedOutput,
    periods: list[Month],
    out_path: Path,
    render_svg: bool = True,
) -> list[Path]:
    """Write per-period regime probabilities as CSV (full precision), plus an
    optional SVG rendering of the filtered traces.

    ``periods`` are the scored months, one per filter row.
    """
    T_eff, m = filter_output.filtered.shape
    if len(periods) != T_eff:
        raise OutputError(
            f"{len(periods)} periods for {T_eff} probability rows"
        )
    header = (
        ["period"]
        + [f"filtered_regime_{j + 1}" for j in range(m)]
        + [f"smoothed_regime_{j + 1}" for j in range(m)]
    )
    lines = [",".join(header)]
    for i, month in enumerate(periods):
        cells = [month_str(month)]
        cells += [repr(float(v)) for v in filter_output.filtered[i]]
        cells += [repr(float(v)) for v in smoothed.smoothed[i]]
        lines.append(",".join(cells))
    out_path = Path(out_path)
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {out_path}: {exc}") from exc
    paths = [out_path]
    if render_svg:
        svg = out_path.with_suffix(".svg")
        _render_probability_svg(filter_output.filtered, periods, svg)
        paths.append(svg)
    return paths


def _configure_matplotlib():
    import matplotlib

    matplotlib.use("Agg")
    # fixed hash salt keeps SVG ids stable across runs
    matplotlib.rcParams["svg.hashsalt"] = "switchvar"
    return matplotlib


def _render_probability_svg(filtered: np.ndarray, periods, out_path: Path) -> None:
    _configure_matplotlib()
    import matplotlib.pyplot as plt

    T_eff, m = filtered.shape
    x = np.arange(T_eff)
    fig, axes = plt.subplots(m, 1, figsize=(9, 2.2 * m), sharex=True)
    axes = np.atleast_1d(axes)
    ticks = np.linspace(0, T_eff - 1, min(8, T_eff)).astype(int)
    for j, ax in enumerate(axes):
        ax.plot(x, filtered[:, j], lw=0.8)
        ax.set_ylim(-0.05, 1.05)
        ax.set_ylabel(f"regime {j + 1}")
    axes[-1].set_xticks(ticks)
    axes[-1].set_xticklabels([month_str(periods[i]) for i in ticks], rotation=45)
    fig.suptitle("Filtered regime probabilities")
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _emit_series_plot_data(
    series: list[PriceSeries], returns: list[ReturnSeries], out_path: Path
) -> Path:
    """Log levels and returns per period (levels start one month earlier)."""
    header = ["period"]
    for s in series:
        header += [f"log_{s.name}"]
    for r in returns:
        header += [r.name]
    lines = [",".join(header)]
    ret_by_period = [dict(zip(r.periods, r.values)) for r in returns]
    for i, month in enumerate(series[0].periods):
        cells = [month_str(month)]
        cells += [repr(float(np.log(s.values[i]))) for s in series]
        for lookup in ret_by_period:
            cells.append(repr(float(lookup[month])) if month in lookup else "")
        lines.append(",".join(cells))
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out_path


# ---------------------------------------------------------------------------
# the pipeline


def dataset_input_hashes(config: DatasetConfig) -> dict[str, str]:
    hashes = {}
    for spec in config.series:
        if spec.is_remote():
            cached = _cache_path(spec.source, config.cache_dir)
            hashes[spec.name] = file_sha256(cached) if cached.exists() else "uncached"
        else:
            path = Path(spec.source)
            hashes[spec.name] = file_sha256(path) if path.exists() else "missing"
    return hashes


def _fit_with_outputs(returns: np.ndarray, spec: MsVarSpec, config: PipelineConfig, seed: int):
    model, diag = msvar.fit(
        returns,
        spec,
        tol=config.tolerance,
        max_iter=config.max_iter,
        restarts=config.restarts,
        seed=seed,
    )
    filt = msvar.hamilton_filter(model, returns)
    smoo = msvar.kim_smoother(filt, model.transition)
    return model, diag, filt, smoo


def _analytics_dict(model: MsVarModel, smoo: msvar.SmoothedOutput) -> dict:
    ergodic = msvar.ergodic_distribution(model.transition)
    durations = msvar.expected_durations(model.transition)
    labels = msvar.classify_regimes(smoo)
    counts = [int(np.sum(labels == j)) for j in range(model.spec.n_regimes)]
    return {
        "ergodic_distribution": ergodic,
        "expected_durations_months": durations,
        "regime_labels": labels.tolist(),
        "regime_month_counts": counts,
    }


def run_pipeline(config: PipelineConfig) -> ReportBundle:
    """Execute every stage and write the report bundle.

    Any stage failure raises :class:`PipelineStageError` naming the stage;
    ``results.json`` is rewritten after each stage, so everything computed
    before the failure is preserved on disk.
    """
    out_dir = Path(config.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise PipelineStageError("output", OutputError(str(exc)))

    results: dict = {
        "provenance": {
            "package": "switchvar",
            "seed": config.seed,
            "pmax": config.pmax,
            "tolerance": config.tolerance,
            "max_iter": config.max_iter,
            "restarts": config.restarts,
            "window": {
                "start": month_str(config.dataset.start) if config.dataset.start else None,
                "end": month_str(config.dataset.end) if config.dataset.end else None,
            },
            "candidates": [
                f"{c.n_regimes}:{c.n_lags}:{'h' if c.switching_covariance else 'i'}"
                for c in config.candidates
            ],
        }
    }
    paths: dict[str, Path] = {"results": out_dir / "results.json"}

    def checkpoint():
        paths["results"].write_text(results_json(results), encoding="utf-8")

    def run_stage(name, fn):
        try:
            fn()
        except PipelineStageError:
            raise
        except (SwitchvarError, ValueError, OSError) as exc:
            checkpoint()
            raise PipelineStageError(name, exc) from exc
        checkpoint()

    state: dict = {}

    def stage_ingest():
        series = load_dataset(config.dataset, refetch=config.refetch)
        state["series"] = series
        results["provenance"]["input_hashes"] = dataset_input_hashes(config.dataset)
        results["ingest"] = {
            s.name: {
                "observations": len(s),
                "first": month_str(s.periods[0]),
                "last": month_str(s.periods[-1]),
            }
            for s in series
        }

    def stage_descriptive():
        series = state["series"]
        returns = [log_returns(s) for s in series]
        state["returns"] = returns
        block: dict = {"levels_raw": {}, "levels_log": {}, "returns": {}}
        for s in series:
            st = summarize(s.values)
            block["levels_raw"][s.name] = _stats_dict(st, jarque_bera(st)[1])
            st = summarize(np.log(s.values))
            block["levels_log"][s.name] = _stats_dict(st, jarque_bera(st)[1])
        for r in returns:
            st = summarize(r)
            block["returns"][r.name] = _stats_dict(st, jarque_bera(st)[1])
        results["descriptive"] = block

    def stage_unitroot():
        series, returns = state["series"], state["returns"]
        block: dict = {"log_levels": {}, "returns": {}}
        for s in series:
            x = np.log(s.values)
            block["log_levels"][s.name] = {
                "adf": _unitroot_dict(adf_test(x)),
                "pp": _unitroot_dict(pp_test(x)),
                "kpss": _unitroot_dict(kpss_test(x)),
            }
        for r in returns:
            block["returns"][r.name] = {
                "adf": _unitroot_dict(adf_test(r.values)),
                "pp": _unitroot_dict(pp_test(r.values)),
                "kpss": _unitroot_dict(kpss_test(r.values)),
            }
        results["unit_roots"] = block

    def stage_lag_selection():
        returns = state["returns"]
        data = np.column_stack([r.values for r in returns])
        state["returns_matrix"] = data
        table = select_lag(data, config.pmax)
        state["chosen_lag"] = table.chosen["aic"]
        results["lag_selection"] = {
            "nobs": table.nobs,
            "chosen": table.chosen,
            "rows": [
                {
                    "lag": row.lag,
                    "loglik": row.loglik,
                    "lr": row.lr,
                    "lr_pvalue": row.lr_pvalue,
                    "fpe": row.fpe,
                    "aic": row.aic,
                    "sc": row.sc,
                    "hq": row.hq,
                }
                for row in table.rows
            ],
        }

    def stage_johansen():
        series = state["series"]
        loglevels = np.column_stack([np.log(s.values) for s in series])
        p = max(1, state["chosen_lag"])
        res = johansen_test(loglevels, p=p)
        results["johansen"] = {
            "n_lags": p,
            "nobs": res.nobs,
            "deterministic": res.deterministic.value,
            "eigenvalues": res.eigenvalues,
            "trace_stats": res.trace_stats,
            "maxeig_stats": res.maxeig_stats,
            "crit_trace": res.crit_trace,
            "crit_maxeig": res.crit_maxeig,
            "decisions": res.decisions,
            "cointegration_rank_5pct": res.cointegration_rank("5%", "standard"),
        }

    def stage_univariate():
        returns = state["returns"]
        data = returns[0].values[:, None]
        spec = MsVarSpec(config.regimes, config.lags, 1, config.switching_cov)
        model, diag, filt, smoo = _fit_with_outputs(
            data, spec, config, config.stage_seed("msvar-univariate")
        )
        state["univariate"] = (model, diag, filt, smoo, returns[0])
        results["msvar_univariate"] = {
            "series": returns[0].name,
            "model": _model_dict(model),
            "loglik": diag.loglik,
            "aic": diag.aic,
            "iterations": diag.n_iterations,
            "converged": diag.converged,
            "restarts_used": diag.restarts_used,
            "filtered": filt.filtered,
            "smoothed": smoo.smoothed,
        }

    def stage_bivariate():
        data = state["returns_matrix"]
        candidates = []
        fits = []
        for i, spec in enumerate(config.candidates):
            label = f"{spec.n_regimes}:{spec.n_lags}:{'h' if spec.switching_covariance else 'i'}"
            try:
                model, diag, filt, smoo = _fit_with_outputs(
                    data, spec, config, config.stage_seed("msvar-bivariate", i)
                )
            except SwitchvarError as exc:
                candidates.append({"spec": label, "error": str(exc)})
                continue
            candidates.append(
                {
                    "spec": label,
                    "loglik": diag.loglik,
                    "aic": diag.aic,
                    "n_params": spec.n_params,
                    "iterations": diag.n_iterations,
                    "converged": diag.converged,
                }
            )
            fits.append((diag.aic, i, model, diag, filt, smoo))
        if not fits:
            raise SwitchvarError("every bivariate candidate failed to fit")
        fits.sort(key=lambda f: (f[0], f[1]))
        _, best_i, model, diag, filt, smoo = fits[0]
        state["bivariate"] = (model, diag, filt, smoo)
        selected_label = (
            f"{model.spec.n_regimes}:{model.spec.n_lags}:"
            f"{'h' if model.spec.switching_covariance else 'i'}"
        )
        results["msvar_bivariate"] = {
            "candidates": candidates,
            "selected": selected_label,
            "model": _model_dict(model),
            "loglik": diag.loglik,
            "aic": diag.aic,
            "iterations": diag.n_iterations,
            "converged": diag.converged,
            "filtered": filt.filtered,
            "smoothed": smoo.smoothed,
        }

    def stage_analytics():
        uni_model, _, _, uni_smoo, _ = state["univariate"]
        biv_model, _, _, biv_smoo = state["bivariate"]
        results["analytics"] = {
            "univariate": _analytics_dict(uni_model, uni_smoo),
            "bivariate": _analytics_dict(biv_model, biv_smoo),
        }
        results["flags"] = _discrepancy_flags(results)

    def stage_output():
        plots_dir = out_dir / "plots"
        series, returns = state["series"], state["returns"]
        uni_model, _, uni_filt, uni_smoo, uni_ret = state["univariate"]
        biv_model, _, biv_filt, biv_smoo = state["bivariate"]
        uni_periods = list(uni_ret.periods[uni_model.spec.n_lags :])
        biv_periods = list(returns[0].periods[biv_model.spec.n_lags :])
        written = emit_probability_plot_data(
            uni_filt, uni_smoo, uni_periods, plots_dir / "univariate_probabilities.csv"
        )
        written += emit_probability_plot_data(
            biv_filt, biv_smoo, biv_periods, plots_dir / "bivariate_probabilities.csv"
        )
        written.append(
            _emit_series_plot_data(series, returns, plots_dir / "levels_returns.csv")
        )
        for path in written:
            paths[path.name] = path
        results["outputs"] = sorted(str(p.relative_to(out_dir)) for p in written)
        report = render_tables(results)
        paths["report"] = out_dir / "report.txt"
        paths["report"].write_text(report, encoding="utf-8")
        state["report"] = report

    run_stage("ingest", stage_ingest)
    run_stage("descriptive", stage_descriptive)
    run_stage("unit-root", stage_unitroot)
    run_stage("lag-selection", stage_lag_selection)
    run_stage("johansen", stage_johansen)
    run_stage("msvar-univariate", stage_univariate)
    run_stage("msvar-bivariate", stage_bivariate)
    run_stage("analytics", stage_analytics)
    run_stage("output", stage_output)

    return ReportBundle(
        results=results, report_text=state["report"], out_dir=out_dir, paths=paths
    )


def _discrepancy_flags(results: dict) -> list[str]:
    """Fixed caveats about the source tables plus data-dependent sign notes."""
    flags = [
        "Source Table 3 Panel A is labeled as natural-log levels but prints "
        "raw-level magnitudes; this report shows raw and log level summaries "
        "side by side.",
        "Source Table 3 Panel A Jarque-Bera values are not reproducible from "
        "the printed skewness/kurtosis under either kurtosis convention and "
        "are not comparison targets.",
        "The source states no deterministic specification, ADF lag policy, or "
        "PP/KPSS bandwidths; this run uses constant-only regressions, AIC lag "
        "selection, and the Bartlett bandwidth rule printed in each block.",
        "Source Table 6 prints a trace statistic for r=0 below the one for "
        "r<=1, violating the trace monotonicity identity, and its prose "
        "conclusion contradicts the decision rule; only the qualitative "
        "no-cointegration conclusion is targeted, and the source's critical "
        "values are reported next to the standard table.",
        "Source Table 9's regime-1 intercept (0.1893 monthly) is implausible "
        "for log returns; coefficient magnitudes there are not targets.",
        "Source Table 9 prints regime-specific autoregressive coefficients "
        "although the declared model class switches intercepts (and "
        "optionally covariances) only; this artifact estimates shared AR "
        "matrices.",
    ]
    biv = results.get("msvar_bivariate")
    if biv is not None:
        ar = np.asarray(biv["model"]["ar_coefs"])
        if ar.shape[0] >= 2 and ar.shape[1] >= 2:
            sign = lambda v: "positive" if v > 0 else ("negative" if v < 0 else "zero")
            flags.append(
                "Estimated (regime-invariant) oil-lag effects on the stock "
                f"return: lag 1 {sign(ar[0][0][1])} ({ar[0][0][1]:+.4f}), "
                f"lag 2 {sign(ar[1][0][1])} ({ar[1][0][1]:+.4f}). The source's "
                "section 5 claims a negative regime-1 and positive regime-2 "
                "oil effect while its conclusion claims positive effects in "
                "both regimes; those statements contradict each other and "
                "cannot both be checked against a shared-AR model."
            )
    flags.append(
        "Parenthesized values in source Tables 7 and 9 (p-values vs standard "
        "errors) have no stated method; this report shows point estimates "
        "only."
    )
    return flags
