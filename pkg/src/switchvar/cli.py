"""Command-line interface.

Verbs: ``fetch`` (populate the download cache), ``run`` (full pipeline),
``fit`` (one switching-VAR spec), ``simulate`` (write the bundled synthetic
fixture dataset), ``report`` (re-render a report from results.json).
Every configuration key can be overridden by the flag of the same name.

Exit codes: 0 success, 1 configuration error, 2 ingest error,
3 estimation error, 4 output error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from switchvar import msvar
from switchvar.errors import ConfigError, PipelineStageError, SwitchvarError
from switchvar.ingest import fetch_remote, load_dataset
from switchvar.descriptive import log_returns
from switchvar.pipeline import (
    STAGE_EXIT_CODES,
    PipelineConfig,
    build_config,
    read_config_file,
    results_json,
    run_pipeline,
)
from switchvar.report import render_tables
from switchvar.synthetic import FIXTURE_SEED, write_fixture_csvs


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="path to the key = value configuration file")
    parser.add_argument("--out", help="output directory (overrides 'out')")
    parser.add_argument("--seed", type=int, help="master seed (overrides 'seed')")
    parser.add_argument("--pmax", type=int, help="maximum lag for selection")
    parser.add_argument("--regimes", type=int, help="regime count for the single-spec fits")
    parser.add_argument("--lags", type=int, help="lag order for the single-spec fits")
    parser.add_argument(
        "--switching-cov",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="regime-dependent covariance for the single-spec fits",
    )
    parser.add_argument(
        "--refetch",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="force re-download of remote sources",
    )
    parser.add_argument("--tolerance", type=float, help="EM convergence tolerance")
    parser.add_argument("--max-iter", type=int, dest="max_iter", help="EM iteration cap")
    parser.add_argument("--restarts", type=int, help="EM restarts per fit")


def _overrides(args: argparse.Namespace) -> dict[str, object]:
    mapping = {
        "out": args.out,
        "seed": args.seed,
        "pmax": args.pmax,
        "regimes": args.regimes,
        "lags": args.lags,
        "switching-cov": args.switching_cov,
        "refetch": args.refetch,
        "tolerance": args.tolerance,
        "max_iter": args.max_iter,
        "restarts": args.restarts,
    }
    return {k: v for k, v in mapping.items() if v is not None}


def _load_pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    return build_config(read_config_file(args.config), _overrides(args))


def _cmd_fetch(args: argparse.Namespace) -> int:
    config = _load_pipeline_config(args)
    if config.dataset.cache_dir is None:
        raise ConfigError("fetch requires a cache_dir")
    for spec in config.dataset.series:
        if not spec.is_remote():
            print(f"{spec.name}: local source {spec.source}, nothing to fetch")
            continue
        content = fetch_remote(
            spec.source, config.dataset.cache_dir, refetch=config.refetch
        )
        print(f"{spec.name}: {len(content)} bytes cached from {spec.source}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_pipeline_config(args)
    bundle = run_pipeline(config)
    rank = bundle.results["johansen"]["cointegration_rank_5pct"]
    chosen = bundle.results["lag_selection"]["chosen"]["aic"]
    print(f"report: {bundle.paths['report']}")
    print(f"results: {bundle.paths['results']}")
    print(f"AIC lag: {chosen}; cointegration rank at 5%: {rank}")
    uni = bundle.results["msvar_univariate"]["model"]
    diag = np.diag(np.asarray(uni["transition"], dtype=float))
    print("univariate transition diagonal: " + ", ".join(f"{d:.4f}" for d in diag))
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    config = _load_pipeline_config(args)
    series = load_dataset(config.dataset, refetch=config.refetch)
    returns = [log_returns(s) for s in series]
    if args.univariate:
        data = returns[0].values[:, None]
        n_vars = 1
    else:
        data = np.column_stack([r.values for r in returns])
        n_vars = data.shape[1]
    spec = msvar.MsVarSpec(config.regimes, config.lags, n_vars, config.switching_cov)
    try:
        model, diag = msvar.fit(
            data,
            spec,
            tol=config.tolerance,
            max_iter=config.max_iter,
            restarts=config.restarts,
            seed=config.seed,
        )
    except SwitchvarError as exc:
        raise PipelineStageError("msvar-bivariate", exc) from exc
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = {
        "spec": {
            "n_regimes": spec.n_regimes,
            "n_lags": spec.n_lags,
            "n_vars": spec.n_vars,
            "switching_covariance": spec.switching_covariance,
        },
        "loglik": diag.loglik,
        "aic": diag.aic,
        "iterations": diag.n_iterations,
        "converged": diag.converged,
        "intercepts": model.intercepts.tolist(),
        "ar_coefs": model.ar_coefs.tolist(),
        "covariances": model.covariances.tolist(),
        "transition": model.transition.tolist(),
        "initial_probs": model.initial_probs.tolist(),
    }
    path = out_dir / "fit.json"
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"fit written to {path}")
    print(f"loglik {diag.loglik:.6f}  AIC {diag.aic:.6f}  converged {diag.converged}")
    for j, row in enumerate(model.transition):
        print(f"P[{j + 1}, .] = " + "  ".join(f"{v:.6f}" for v in row))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    paths = write_fixture_csvs(out_dir, seed=args.seed)
    config_path = out_dir / "pipeline.cfg"
    lines = ["# generated fixture configuration"]
    for idx, (name, path) in enumerate(paths.items(), start=1):
        lines += [
            f"series{idx}.name = {name}",
            f"series{idx}.source = {path}",
            f"series{idx}.date_column = date",
            f"series{idx}.value_column = value",
        ]
    lines += [
        f"cache_dir = {out_dir / 'cache'}",
        f"out = {out_dir / 'out'}",
        "pmax = 8",
        f"seed = {args.seed}",
        "regimes = 2",
        "lags = 2",
        "switching-cov = false",
        "candidates = 2:1:i, 2:2:i, 2:2:h",
    ]
    config_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    for name, path in paths.items():
        print(f"{name}: {path}")
    print(f"config: {config_path}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    results_path = Path(args.results)
    if not results_path.exists():
        raise ConfigError(f"results file not found: {results_path}")
    results = json.loads(results_path.read_text(encoding="utf-8"))
    text = render_tables(results)
    if args.out:
        out_path = Path(args.out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(text, encoding="utf-8")
        print(f"report written to {out_path}")
    else:
        print(text, end="")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="switchvar",
        description="Regime-switching VAR pipeline for monthly stock/oil data",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_fetch = sub.add_parser("fetch", help="download remote sources into the cache")
    _add_override_flags(p_fetch)
    p_fetch.set_defaults(func=_cmd_fetch)

    p_run = sub.add_parser("run", help="run the full pipeline")
    _add_override_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_fit = sub.add_parser("fit", help="fit a single switching-VAR spec")
    _add_override_flags(p_fit)
    p_fit.add_argument(
        "--univariate", action="store_true", help="fit only the first series"
    )
    p_fit.set_defaults(func=_cmd_fit)

    p_sim = sub.add_parser("simulate", help="write the synthetic fixture dataset")
    p_sim.add_argument("--out", required=True, help="directory for the fixture files")
    p_sim.add_argument("--seed", type=int, default=FIXTURE_SEED)
    p_sim.set_defaults(func=_cmd_simulate)

    p_rep = sub.add_parser("report", help="re-render a report from results.json")
    p_rep.add_argument("--results", required=True, help="path to results.json")
    p_rep.add_argument("--out", help="write the report here instead of stdout")
    p_rep.set_defaults(func=_cmd_report)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except PipelineStageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return STAGE_EXIT_CODES.get(exc.stage, 3)
    except SwitchvarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
