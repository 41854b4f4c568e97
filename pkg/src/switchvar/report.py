"""Plain-text rendering of the results document.

Every number printed here is read back out of the results dict (the same
object serialized to results.json), so the rendered report can never drift
from the machine-readable output. Tables print six decimal places.
"""

from __future__ import annotations

import numpy as np

_RULE = "-" * 78
_DRULE = "=" * 78


def _fmt(value, width: int = 12, digits: int = 6) -> str:
    if value is None:
        return "".rjust(width)
    if isinstance(value, str):
        return value.rjust(width)
    if isinstance(value, bool):
        return ("yes" if value else "no").rjust(width)
    v = float(value)
    if v != v:  # NaN
        return "nan".rjust(width)
    if value != 0 and (abs(v) < 10 ** (-digits) or abs(v) >= 10**9):
        return f"{v:.2e}".rjust(width)
    return f"{v:.{digits}f}".rjust(width)


def _section(title: str) -> list[str]:
    return ["", _DRULE, title, _DRULE]


def _matrix_lines(mat, row_labels, col_labels, width: int = 12) -> list[str]:
    mat = np.asarray(mat, dtype=float)
    label_w = max(len(str(r)) for r in row_labels) + 2
    lines = [" " * label_w + "".join(str(c).rjust(width) for c in col_labels)]
    for label, row in zip(row_labels, mat):
        lines.append(str(label).ljust(label_w) + "".join(_fmt(v, width) for v in row))
    return lines


def render_tables(results: dict) -> str:
    lines: list[str] = []
    lines += [_DRULE, "switchvar pipeline report", _DRULE]
    prov = results.get("provenance", {})
    lines.append(f"seed: {prov.get('seed')}   pmax: {prov.get('pmax')}   "
                 f"restarts: {prov.get('restarts')}   max_iter: {prov.get('max_iter')}")
    window = prov.get("window", {})
    lines.append(f"sample window: {window.get('start')} .. {window.get('end')}")
    for name, digest in (prov.get("input_hashes") or {}).items():
        lines.append(f"input {name}: sha256 {digest}")

    if "ingest" in results:
        lines += _section("Data")
        for name, info in results["ingest"].items():
            lines.append(
                f"{name}: {info['observations']} monthly observations, "
                f"{info['first']} .. {info['last']}"
            )

    if "descriptive" in results:
        lines += _section("Summary statistics (levels and log returns)")
        block = results["descriptive"]
        stat_rows = (
            ("Mean", "mean"), ("Median", "median"), ("Maximum", "maximum"),
            ("Minimum", "minimum"), ("Std. Dev.", "std"), ("Skewness", "skewness"),
            ("Kurtosis", "kurtosis"), ("Jarque-Bera", "jarque_bera"),
            ("JB p-value", "jarque_bera_pvalue"), ("Observations", "count"),
        )
        for panel, title in (
            ("levels_raw", "Panel: raw levels"),
            ("levels_log", "Panel: natural log levels"),
            ("returns", "Panel: log returns"),
        ):
            names = list(block[panel])
            lines.append("")
            lines.append(title)
            lines.append("".ljust(14) + "".join(n.rjust(14) for n in names))
            for label, key in stat_rows:
                row = [block[panel][n][key] for n in names]
                width_fmt = "".join(
                    (f"{v:d}".rjust(14) if key == "count" else _fmt(v, 14)) for v in row
                )
                lines.append(label.ljust(14) + width_fmt)

    if "unit_roots" in results:
        lines += _section("Unit root tests (constant-only deterministic terms)")
        block = results["unit_roots"]
        for panel, title in (("log_levels", "Log levels"), ("returns", "Log returns")):
            names = list(block[panel])
            lines.append("")
            lines.append(title)
            header = "".ljust(18) + "".join(n.rjust(24) for n in names)
            lines.append(header)
            for test in ("adf", "pp", "kpss"):
                cells = []
                for n in names:
                    res = block[panel][n][test]
                    if res["p_value"] is not None:
                        cells.append(f"{res['statistic']:.3f} ({res['p_value']:.3f})".rjust(24))
                    else:
                        cells.append(f"{res['statistic']:.3f}".rjust(24))
                label = {"adf": "ADF", "pp": "Phillips-Perron", "kpss": "KPSS"}[test]
                lines.append(label.ljust(18) + "".join(cells))
            decisions = []
            for n in names:
                adf_rej = block[panel][n]["adf"]["reject_at_5pct"]
                kpss_rej = block[panel][n]["kpss"]["reject_at_5pct"]
                verdict = "I(0)" if adf_rej and not kpss_rej else ("I(1)" if not adf_rej else "mixed")
                decisions.append(f"{n}: {verdict}")
            lines.append("decision@5%: " + "   ".join(decisions))
        kpss_cv = None
        for panel in block.values():
            for tests in panel.values():
                kpss_cv = tests["kpss"]["critical_values"]
                break
            break
        if kpss_cv:
            levels = sorted(kpss_cv, key=lambda lvl: -float(lvl.rstrip("%")))
            lines.append(
                "KPSS critical values: "
                + "  ".join(f"{lvl}: {kpss_cv[lvl]}" for lvl in levels)
            )

    if "lag_selection" in results:
        block = results["lag_selection"]
        lines += _section(f"VAR lag order selection (common sample T = {block['nobs']})")
        chosen = block["chosen"]
        cols = ("lag", "loglik", "lr", "fpe", "aic", "sc", "hq")
        header = "Lag".rjust(4) + "".join(
            c.upper().rjust(14) for c in ("LogL", "LR", "FPE", "AIC", "SC", "HQ")
        )
        lines.append(header)
        for row in block["rows"]:
            cells = [f"{row['lag']:d}".rjust(4)]
            for crit in ("loglik", "lr", "fpe", "aic", "sc", "hq"):
                star = "*" if chosen.get(crit) == row["lag"] else ""
                val = row[crit]
                if val is None:
                    cells.append("NA".rjust(14))
                else:
                    cells.append((f"{val:.6f}" + star).rjust(14))
            lines.append("".join(cells))
        lines.append(
            "* criterion optimum (LR: last significant sequential test at 5%, "
            f"p-value at starred lag: "
            + (
                f"{block['rows'][chosen['lr']]['lr_pvalue']:.6f})"
                if "lr" in chosen
                else "none)"
            )
        )
        lines.append(f"chosen lag by AIC: {chosen['aic']}")

    if "johansen" in results:
        block = results["johansen"]
        lines += _section(
            f"Johansen cointegration test (p = {block['n_lags']}, "
            f"{block['deterministic']}, T = {block['nobs']})"
        )
        k = len(block["eigenvalues"])
        lines.append(
            "eigenvalues: " + "  ".join(f"{v:.6f}" for v in block["eigenvalues"])
        )
        for stats_key, crit_key, title in (
            ("trace_stats", "crit_trace", "Panel A: trace test"),
            ("maxeig_stats", "crit_maxeig", "Panel B: maximum eigenvalue"),
        ):
            lines.append("")
            lines.append(title)
            header = "".ljust(8) + "statistic".rjust(12)
            header += "".join(f"std {lvl}".rjust(12) for lvl in ("10%", "5%", "1%"))
            if "paper" in block[crit_key]:
                header += "".join(f"src {lvl}".rjust(12) for lvl in ("10%", "5%", "1%"))
            lines.append(header)
            for r in range(k):
                row = f"r<={r}" if r else "r=0"
                cells = row.ljust(8) + _fmt(block[stats_key][r])
                cells += "".join(_fmt(cv) for cv in block[crit_key]["standard"][r])
                if "paper" in block[crit_key]:
                    cells += "".join(_fmt(cv) for cv in block[crit_key]["paper"][r])
                lines.append(cells)
        rank = block["cointegration_rank_5pct"]
        conclusion = (
            "no cointegration at 5% (standard critical values)"
            if rank == 0
            else f"cointegration rank {rank} at 5% (standard critical values)"
        )
        lines.append("")
        lines.append(f"conclusion: {conclusion}")

    for key, title in (
        ("msvar_univariate", "Univariate regime-switching fit"),
        ("msvar_bivariate", "Bivariate regime-switching fit"),
    ):
        if key not in results:
            continue
        block = results[key]
        spec = block["model"]["spec"]
        label = (
            f"MSI{'H' if spec['switching_covariance'] else ''}"
            f"({spec['n_regimes']})-VAR({spec['n_lags']})"
        )
        lines += _section(f"{title}: {label}")
        if key == "msvar_bivariate":
            lines.append("candidates (AIC selection):")
            for cand in block["candidates"]:
                if "error" in cand:
                    lines.append(f"  {cand['spec']}: failed ({cand['error']})")
                else:
                    marker = " <= selected" if cand["spec"] == block["selected"] else ""
                    lines.append(
                        f"  {cand['spec']}: loglik {_fmt(cand['loglik']).strip()}, "
                        f"AIC {_fmt(cand['aic']).strip()}, "
                        f"params {cand['n_params']}{marker}"
                    )
            lines.append("")
        lines.append(
            f"log-likelihood: {_fmt(block['loglik']).strip()}   AIC: "
            f"{_fmt(block['aic']).strip()}   iterations: {block['iterations']}   "
            f"converged: {block['converged']}"
        )
        model = block["model"]
        m = spec["n_regimes"]
        k = spec["n_vars"]
        var_labels = [f"y{i + 1}" for i in range(k)]
        lines.append("")
        lines += _matrix_lines(
            model["intercepts"],
            [f"regime {j + 1}" for j in range(m)],
            [f"const({v})" for v in var_labels],
        )
        for i, a in enumerate(model["ar_coefs"]):
            lines.append(f"AR({i + 1}) coefficients (regime-invariant):")
            lines += _matrix_lines(a, var_labels, var_labels)
        for j, cov in enumerate(model["covariances"]):
            sd = np.sqrt(np.diag(np.asarray(cov, dtype=float)))
            shared = "" if spec["switching_covariance"] else " (shared)"
            lines.append(
                f"regime {j + 1} residual std{shared}: "
                + "  ".join(f"{v:.6f}" for v in sd)
            )
            if not spec["switching_covariance"]:
                break
        lines.append("transition matrix (rows sum to 1):")
        lines += _matrix_lines(
            model["transition"],
            [f"regime {j + 1}" for j in range(m)],
            [f"-> {j + 1}" for j in range(m)],
        )

    if "analytics" in results:
        lines += _section("Regime analytics")
        for scope in ("univariate", "bivariate"):
            a = results["analytics"][scope]
            lines.append(
                f"{scope}: ergodic probabilities "
                + "/".join(f"{v:.4f}" for v in a["ergodic_distribution"])
                + "; expected durations (months) "
                + "/".join(f"{v:.2f}" for v in a["expected_durations_months"])
                + "; classified months "
                + "/".join(str(c) for c in a["regime_month_counts"])
            )

    if "outputs" in results:
        lines += _section("Emitted files")
        for rel in results["outputs"]:
            lines.append(f"  {rel}")

    if "flags" in results:
        lines += _section("Source-discrepancy flags")
        for i, flag in enumerate(results["flags"], 1):
            lines.append(f"[{i}] {flag}")

    return "\n".join(lines) + "\n"
