"""Markov-switching VAR with switching intercepts: filtering, smoothing, EM.

Model: y_t = v_{s_t} + A_1 y_{t-1} + ... + A_p y_{t-p} + e_t with
e_t ~ N(0, Sigma_{s_t}) and s_t a first-order Markov chain with transition
matrix P. The autoregressive matrices are regime-invariant; the intercepts
always switch; the covariance switches only when the spec says so
(heteroskedastic variant). Estimation is EM: the E-step runs the forward
filter and backward smoother, the M-step re-estimates the transition matrix
from pairwise smoothed probabilities and the regression block from
probability-weighted least squares.

Numerical conventions: the filter runs in linear space with per-period
renormalization; densities are evaluated through Cholesky factors; regime
covariances are floored at eigenvalue 1e-12. The EM log-likelihood is
monotone by construction (the switching-covariance M-step is a conditional
maximization, which preserves ascent).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from switchvar.errors import (
    DensityError,
    ErgodicityError,
    FilterError,
    InfiniteDurationError,
    InsufficientDataError,
    NonConvergenceError,
    RankDeficiencyError,
    RegimeCollapseError,
    SmootherError,
)
from switchvar.varbase import LOG_2PI, VarModel, fit_var

_PROB_TOL = 1e-10
_COV_FLOOR = 1e-12
_WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class MsVarSpec:
    """Shape of a switching-intercept VAR: regimes, lags, variables."""

    n_regimes: int
    n_lags: int
    n_vars: int
    switching_covariance: bool = False

    def __post_init__(self):
        if self.n_regimes < 2:
            raise ValueError("n_regimes must be at least 2")
        if self.n_lags < 0:
            raise ValueError("n_lags must be nonnegative")
        if self.n_vars < 1:
            raise ValueError("n_vars must be at least 1")

    @property
    def n_params(self) -> int:
        """Free parameters: intercepts + AR + covariance(s) + transition."""
        m, p, k = self.n_regimes, self.n_lags, self.n_vars
        cov = k * (k + 1) // 2 * (m if self.switching_covariance else 1)
        return m * k + p * k * k + cov + m * (m - 1)


@dataclass(frozen=True)
class MsVarModel:
    """Parameter set of a switching-intercept VAR.

    ``covariances`` always has one k x k block per regime; without
    covariance switching all blocks are identical.
    """

    spec: MsVarSpec
    intercepts: np.ndarray  # (m, k)
    ar_coefs: np.ndarray  # (p, k, k)
    covariances: np.ndarray  # (m, k, k)
    transition: np.ndarray  # (m, m), rows sum to 1
    initial_probs: np.ndarray  # (m,), distribution of the pre-sample anchor state

    def __post_init__(self):
        m, p, k = self.spec.n_regimes, self.spec.n_lags, self.spec.n_vars
        for name, arr, shape in (
            ("intercepts", self.intercepts, (m, k)),
            ("ar_coefs", self.ar_coefs, (p, k, k)),
            ("covariances", self.covariances, (m, k, k)),
            ("transition", self.transition, (m, m)),
            ("initial_probs", self.initial_probs, (m,)),
        ):
            object.__setattr__(self, name, np.asarray(arr, dtype=float))
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name}: expected shape {shape}, got {getattr(self, name).shape}")
        validate_transition_matrix(self.transition)
        if abs(self.initial_probs.sum() - 1.0) > _PROB_TOL or np.any(self.initial_probs < 0):
            raise ValueError("initial_probs must be a probability vector")
        for j in range(m):
            cov = self.covariances[j]
            if not np.allclose(cov, cov.T, atol=1e-10):
                raise DensityError(f"regime {j}: covariance not symmetric")
        if not self.spec.switching_covariance:
            for j in range(1, m):
                if not np.allclose(self.covariances[j], self.covariances[0], atol=1e-10):
                    raise ValueError("covariances must be identical without switching")

    def ar_flat(self) -> np.ndarray:
        """[A_1 A_2 ... A_p] as one k x (k p) block, matching the lag design."""
        k = self.spec.n_vars
        if self.spec.n_lags == 0:
            return np.zeros((k, 0))
        return np.concatenate(list(self.ar_coefs), axis=1)

    def relabeled(self, perm: np.ndarray) -> "MsVarModel":
        """Model with regimes permuted so that new regime i is old regime perm[i]."""
        perm = np.asarray(perm)
        return MsVarModel(
            spec=self.spec,
            intercepts=self.intercepts[perm],
            ar_coefs=self.ar_coefs,
            covariances=self.covariances[perm],
            transition=self.transition[np.ix_(perm, perm)],
            initial_probs=self.initial_probs[perm],
        )


def validate_transition_matrix(P: np.ndarray) -> None:
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError("transition matrix must be square")
    if np.any(P < 0) or np.any(P > 1):
        raise ValueError("transition probabilities outside [0, 1]")
    if np.any(np.abs(P.sum(axis=1) - 1.0) > _PROB_TOL):
        raise ValueError("transition matrix rows must sum to 1")


@dataclass(frozen=True)
class FilterOutput:
    """Forward-filter output over the scored periods t = p+1..T.

    Row i of the probability arrays refers to data row ``n_presample + i``.
    ``initial`` is the anchor-state distribution the recursion started from.
    """

    predicted: np.ndarray  # (T_eff, m): xi_{t|t-1}
    filtered: np.ndarray  # (T_eff, m): xi_{t|t}
    loglik_contributions: np.ndarray  # (T_eff,)
    loglik: float
    initial: np.ndarray  # (m,)
    n_presample: int


@dataclass(frozen=True)
class SmoothedOutput:
    """Backward-smoother output aligned with the filter's scored periods."""

    smoothed: np.ndarray  # (T_eff, m): xi_{t|T}
    pairwise: np.ndarray  # (T_eff - 1, m, m): Pr(S_t = i, S_{t+1} = j | all data)


@dataclass(frozen=True)
class FitDiagnostics:
    n_iterations: int
    loglik_trace: np.ndarray
    converged: bool
    final_param_change: float
    restarts_used: int
    aic: float
    loglik: float = field(default=math.nan)


def _design(data: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(Y, X) with X the stacked lag block [y_{t-1}, ..., y_{t-p}] (no constant)."""
    T = data.shape[0]
    Y = data[p:]
    if p == 0:
        return Y, np.zeros((T, 0))
    X = np.hstack([data[p - i : T - i] for i in range(1, p + 1)])
    return Y, X


def _regime_densities(model: MsVarModel, Y: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Gaussian density of each scored observation under each regime, (T_eff, m)."""
    m, k = model.spec.n_regimes, model.spec.n_vars
    base = Y - X @ model.ar_flat().T  # (T_eff, k): y_t minus the shared AR part
    dens = np.empty((Y.shape[0], m))
    for j in range(m):
        try:
            chol = np.linalg.cholesky(model.covariances[j])
        except np.linalg.LinAlgError:
            raise DensityError(f"regime {j}: covariance not positive definite") from None
        resid = base - model.intercepts[j]
        solved = solve_triangular(chol, resid.T, lower=True)
        quad = np.sum(solved**2, axis=0)
        log_norm = -0.5 * k * LOG_2PI - np.log(np.diag(chol)).sum()
        dens[:, j] = np.exp(log_norm - 0.5 * quad)
    return dens


def regime_conditional_density(model: MsVarModel, y_t, lagged) -> np.ndarray:
    """Density of one observation under each regime.

    ``lagged`` holds the p most recent observations, most recent first
    (lagged[0] is y_{t-1}); it may be empty when the spec has no lags.
    """
    k, p = model.spec.n_vars, model.spec.n_lags
    y_t = np.asarray(y_t, dtype=float).reshape(1, k)
    lagged = [np.asarray(v, dtype=float).reshape(k) for v in lagged]
    if len(lagged) < p:
        raise ValueError(f"need {p} lagged observations, got {len(lagged)}")
    x = np.concatenate(lagged[:p]) if p else np.zeros(0)
    return _regime_densities(model, y_t, x.reshape(1, -1))[0]


def hamilton_filter(model: MsVarModel, data) -> FilterOutput:
    """Forward recursion producing filtered probabilities and the likelihood.

    xi_{p|p} starts from the model's anchor distribution; each step predicts
    through the transition matrix, reweights by the regime-conditional
    densities, and renormalizes (the normalizer is that period's likelihood
    contribution).
    """
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    p = model.spec.n_lags
    if data.shape[0] <= p:
        raise InsufficientDataError("hamilton_filter: need more observations than lags")
    if data.shape[1] != model.spec.n_vars:
        raise ValueError("data has the wrong number of variables")

    Y, X = _design(data, p)
    dens = _regime_densities(model, Y, X)
    T_eff, m = dens.shape
    PT = model.transition.T.copy()

    predicted = np.empty((T_eff, m))
    filtered = np.empty((T_eff, m))
    contributions = np.empty(T_eff)
    xi = model.initial_probs
    for t in range(T_eff):
        pred = PT @ xi
        num = pred * dens[t]
        c = num.sum()
        if not (c > 0.0) or not math.isfinite(c):
            raise FilterError("zero or non-finite total density", period=p + t)
        xi = num / c
        predicted[t] = pred
        filtered[t] = xi
        contributions[t] = math.log(c)
    return FilterOutput(
        predicted=predicted,
        filtered=filtered,
        loglik_contributions=contributions,
        loglik=float(contributions.sum()),
        initial=np.array(model.initial_probs, dtype=float),
        n_presample=p,
    )


def kim_smoother(filter_output: FilterOutput, P) -> SmoothedOutput:
    """Backward recursion from filtered to smoothed probabilities.

    Also produces the pairwise terms Pr(S_t = i, S_{t+1} = j | all data),
    which marginalize to the smoothed rows on both sides.
    """
    P = np.asarray(P, dtype=float)
    validate_transition_matrix(P)
    filtered, predicted = filter_output.filtered, filter_output.predicted
    T_eff, m = filtered.shape

    smoothed = np.empty_like(filtered)
    smoothed[-1] = filtered[-1]
    for t in range(T_eff - 2, -1, -1):
        ratio = _smoother_ratio(smoothed[t + 1], predicted[t + 1])
        smoothed[t] = filtered[t] * (P @ ratio)
    ratios = np.empty_like(filtered)
    ratios[0] = 0.0  # unused
    for t in range(1, T_eff):
        ratios[t] = _smoother_ratio(smoothed[t], predicted[t])
    pairwise = filtered[:-1, :, None] * P[None, :, :] * ratios[1:, None, :]
    return SmoothedOutput(smoothed=smoothed, pairwise=pairwise)


def _smoother_ratio(smoothed_row: np.ndarray, predicted_row: np.ndarray) -> np.ndarray:
    """smoothed/predicted with 0/0 -> 0; a true division by zero is an error."""
    bad = (predicted_row <= 0.0) & (smoothed_row > 1e-300)
    if np.any(bad):
        raise SmootherError(
            "zero predicted probability with positive smoothed mass (degenerate transition matrix)"
        )
    out = np.zeros_like(smoothed_row)
    ok = predicted_row > 0.0
    out[ok] = smoothed_row[ok] / predicted_row[ok]
    return out


def _anchor_terms(
    model: MsVarModel, filt: FilterOutput, smoo: SmoothedOutput
) -> tuple[np.ndarray, np.ndarray]:
    """Posterior of the anchor state and its pairwise term with period p+1."""
    ratio = _smoother_ratio(smoo.smoothed[0], filt.predicted[0])
    zeta0 = filt.initial[:, None] * model.transition * ratio[None, :]
    return zeta0.sum(axis=1), zeta0


def _weighted_mstep(
    Y: np.ndarray,
    X: np.ndarray,
    weights: np.ndarray,
    switching_covariance: bool,
    sigmas_current: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Probability-weighted least squares for (intercepts, AR block, covariances).

    With a shared covariance the update is the exact joint maximizer. With
    switching covariances the AR block solves the generalized least-squares
    normal equations at the current covariances (conditional maximization)
    and the covariances are then updated at the new mean parameters.
    """
    T_eff, k = Y.shape
    q = X.shape[1]
    m = weights.shape[1]
    wsum = weights.sum(axis=0)
    if np.any(wsum < _WEIGHT_FLOOR):
        raise RegimeCollapseError(
            f"regime weights collapsed to {wsum.min():.3e}; restart advised"
        )
    ybar = weights.T @ Y / wsum[:, None]  # (m, k)
    xbar = weights.T @ X / wsum[:, None] if q else np.zeros((m, 0))

    if q == 0:
        A = np.zeros((k, 0))
    elif not switching_covariance:
        sxx = X.T @ X - (xbar.T * wsum) @ xbar
        sxy = X.T @ Y - (xbar.T * wsum) @ ybar
        try:
            A = np.linalg.solve(sxx, sxy).T
        except np.linalg.LinAlgError:
            raise RankDeficiencyError("singular weighted regressor moments") from None
    else:
        lhs = np.zeros((k * q, k * q))
        rhs = np.zeros((k, q))
        for j in range(m):
            wj = weights[:, j : j + 1]
            sxx_j = X.T @ (wj * X) - wsum[j] * np.outer(xbar[j], xbar[j])
            sxy_j = X.T @ (wj * Y) - wsum[j] * np.outer(xbar[j], ybar[j])
            omega = np.linalg.inv(sigmas_current[j])
            lhs += np.kron(sxx_j, omega)
            rhs += omega @ sxy_j.T
        try:
            vec = np.linalg.solve(lhs, rhs.flatten("F"))
        except np.linalg.LinAlgError:
            raise RankDeficiencyError("singular weighted GLS system") from None
        A = vec.reshape((k, q), order="F")

    intercepts = ybar - xbar @ A.T  # (m, k)
    base = Y - X @ A.T
    covariances = np.empty((m, k, k))
    if switching_covariance:
        for j in range(m):
            E = base - intercepts[j]
            cov = (weights[:, j] * E.T) @ E / wsum[j]
            covariances[j] = _floor_covariance(0.5 * (cov + cov.T))
    else:
        pooled = np.zeros((k, k))
        for j in range(m):
            E = base - intercepts[j]
            pooled += (weights[:, j] * E.T) @ E
        pooled = _floor_covariance(0.5 * (pooled + pooled.T) / T_eff)
        covariances[:] = pooled
    return intercepts, A, covariances


def _floor_covariance(cov: np.ndarray) -> np.ndarray:
    eigvals, eigvecs = np.linalg.eigh(cov)
    if eigvals[0] >= _COV_FLOOR:
        return cov
    eigvals = np.maximum(eigvals, _COV_FLOOR)
    return (eigvecs * eigvals) @ eigvecs.T


def _ar_from_flat(A: np.ndarray, p: int, k: int) -> np.ndarray:
    if p == 0:
        return np.empty((0, k, k))
    return np.stack([A[:, i * k : (i + 1) * k] for i in range(p)])


def em_step(model: MsVarModel, data) -> tuple[MsVarModel, float]:
    """One EM iteration; returns the updated model and the log-likelihood
    of the *input* model (the E-step filter's likelihood)."""
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    p = model.spec.n_lags
    Y, X = _design(data, p)

    filt = hamilton_filter(model, data)
    smoo = kim_smoother(filt, model.transition)
    anchor, zeta0 = _anchor_terms(model, filt, smoo)

    trans_num = zeta0 + smoo.pairwise.sum(axis=0)
    row_sums = trans_num.sum(axis=1)
    if np.any(row_sums < _WEIGHT_FLOOR):
        raise RegimeCollapseError("a regime is never visited; restart advised")
    transition = trans_num / row_sums[:, None]
    initial = anchor / anchor.sum()

    intercepts, A, covariances = _weighted_mstep(
        Y, X, smoo.smoothed, model.spec.switching_covariance, model.covariances
    )
    updated = MsVarModel(
        spec=model.spec,
        intercepts=intercepts,
        ar_coefs=_ar_from_flat(A, p, model.spec.n_vars),
        covariances=covariances,
        transition=transition,
        initial_probs=initial,
    )
    return updated, filt.loglik


# Smoothing windows cycled across restarts for the quantile-split
# initialization: persistent-regime basins come from averaged residuals,
# the raw split targets outlier-driven basins.
_INIT_WINDOWS = (6, 1, 12)


def _quantile_split_weights(resid_first: np.ndarray, m: int, window: int) -> np.ndarray:
    """Hard initial weights from descending quantile bins of (rolling-mean)
    pooled residuals; the rolling mean makes persistent level shifts, not
    single outliers, drive the split."""
    T = resid_first.shape[0]
    signal = resid_first
    if window > 1:
        kernel = np.ones(window) / window
        signal = np.convolve(resid_first, kernel, mode="same")
    order = np.argsort(-signal, kind="stable")
    weights = np.zeros((T, m))
    for bin_idx, chunk in enumerate(np.array_split(order, m)):
        weights[chunk, bin_idx] = 1.0
    return weights


def _initial_model(
    spec: MsVarSpec,
    base: VarModel,
    Y: np.ndarray,
    X: np.ndarray,
    rng: np.random.Generator,
    restart: int,
) -> MsVarModel:
    m, k = spec.n_regimes, spec.n_vars
    window = _INIT_WINDOWS[restart % len(_INIT_WINDOWS)]
    weights = _quantile_split_weights(base.resid[:, 0], m, window)
    pooled = np.repeat(base.sigma[None], m, axis=0)
    intercepts, A, covariances = _weighted_mstep(
        Y, X, weights, spec.switching_covariance, pooled
    )
    if restart >= len(_INIT_WINDOWS):
        scale = np.sqrt(np.diag(base.sigma))
        intercepts = intercepts + 0.25 * scale * rng.standard_normal((m, k))
    transition = np.full((m, m), 0.1 / (m - 1))
    np.fill_diagonal(transition, 0.9)
    return MsVarModel(
        spec=spec,
        intercepts=intercepts,
        ar_coefs=_ar_from_flat(A, spec.n_lags, k),
        covariances=covariances,
        transition=transition,
        initial_probs=np.full(m, 1.0 / m),
    )


def _param_vector(model: MsVarModel) -> np.ndarray:
    return np.concatenate(
        [
            model.intercepts.ravel(),
            model.ar_coefs.ravel(),
            model.covariances.ravel(),
            model.transition.ravel(),
            model.initial_probs,
        ]
    )


def canonical_order(model: MsVarModel) -> np.ndarray:
    """Permutation sorting regimes by the first variable's intercept, descending."""
    return np.argsort(-model.intercepts[:, 0], kind="stable")


def fit(
    data,
    spec: MsVarSpec,
    tol: float = 1e-8,
    max_iter: int = 500,
    restarts: int = 3,
    seed: int = 0,
) -> tuple[MsVarModel, FitDiagnostics]:
    """EM estimation with seeded restarts.

    Convergence is a relative log-likelihood change below ``tol``. The best
    converged restart by final likelihood wins (ties break toward the lower
    restart index); regimes are then relabeled so regime 0 has the largest
    first-variable intercept. Raises :class:`NonConvergenceError` with the
    best attempt attached when no restart converges.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    T_full, k = data.shape
    if k != spec.n_vars:
        raise ValueError(f"data has {k} variables, spec expects {spec.n_vars}")
    m, p = spec.n_regimes, spec.n_lags
    if T_full <= p * k + m * k + m * m:
        raise InsufficientDataError("fit: sample too short for the requested spec")

    base = fit_var(data, p)
    Y, X = _design(data, p)

    attempts = []
    for r in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(r,)))
        try:
            model = _initial_model(spec, base, Y, X, rng, restart=r)
            trace = []
            ll_prev = None
            converged = False
            param_change = math.inf
            for _ in range(max_iter):
                new_model, ll = em_step(model, data)
                trace.append(ll)
                param_change = float(
                    np.max(np.abs(_param_vector(new_model) - _param_vector(model)))
                )
                if ll_prev is not None and abs(ll - ll_prev) / (1.0 + abs(ll)) < tol:
                    converged = True
                    break
                model = new_model
                ll_prev = ll
        except (RegimeCollapseError, FilterError, RankDeficiencyError):
            continue
        attempts.append((trace[-1], r, model, np.array(trace), converged, param_change))

    if not attempts:
        raise NonConvergenceError("every restart collapsed or failed", best=None)
    attempts.sort(key=lambda a: (-a[0], a[1]))
    converged_attempts = [a for a in attempts if a[4]]
    if not converged_attempts:
        ll, r, model, trace, converged, change = attempts[0]
        diag = FitDiagnostics(
            n_iterations=len(trace),
            loglik_trace=trace,
            converged=False,
            final_param_change=change,
            restarts_used=len(attempts),
            aic=model_aic(model, ll, Y.shape[0]),
            loglik=ll,
        )
        raise NonConvergenceError(
            f"no restart converged within {max_iter} iterations", best=(model, diag)
        )

    ll, r, model, trace, converged, change = converged_attempts[0]
    model = model.relabeled(canonical_order(model))
    diag = FitDiagnostics(
        n_iterations=len(trace),
        loglik_trace=trace,
        converged=True,
        final_param_change=change,
        restarts_used=len(attempts),
        aic=model_aic(model, ll, Y.shape[0]),
        loglik=ll,
    )
    return model, diag


def model_aic(model: MsVarModel, loglik: float, nobs: int) -> float:
    """Per-observation AIC with the spec's parameter count."""
    return (-2.0 * loglik + 2.0 * model.spec.n_params) / nobs


def ergodic_distribution(P) -> np.ndarray:
    """Stationary distribution pi with pi' P = pi'; requires an irreducible,
    aperiodic chain (second-largest eigenvalue modulus strictly below 1)."""
    P = np.asarray(P, dtype=float)
    validate_transition_matrix(P)
    moduli = np.sort(np.abs(np.linalg.eigvals(P)))[::-1]
    if moduli[1] > 1.0 - 1e-10:
        raise ErgodicityError("transition matrix is reducible or periodic")
    m = P.shape[0]
    A = np.vstack([P.T - np.eye(m), np.ones((1, m))])
    b = np.concatenate([np.zeros(m), [1.0]])
    pi, _, _, _ = np.linalg.lstsq(A, b, rcond=None)
    if np.any(pi <= 0):
        raise ErgodicityError("stationary distribution has non-positive entries")
    return pi / pi.sum()


def expected_durations(P) -> np.ndarray:
    """Mean consecutive periods in each regime: 1 / (1 - p_ii)."""
    P = np.asarray(P, dtype=float)
    validate_transition_matrix(P)
    diag = np.diag(P)
    if np.any(diag >= 1.0):
        raise InfiniteDurationError("absorbing regime: infinite expected duration")
    return 1.0 / (1.0 - diag)


def classify_regimes(smoothed: SmoothedOutput) -> np.ndarray:
    """Most probable regime per period (0-based labels; ties take the lower)."""
    return np.argmax(smoothed.smoothed, axis=1)


def simulate(
    model: MsVarModel, T: int, seed: int, burn_in: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Draw a regime path and observations from the model.

    Pre-sample lags start at zero; pass ``burn_in`` to discard a prefix
    (drawn with the same stream, so output is reproducible given the seed).
    """
    spec = model.spec
    if T <= spec.n_lags:
        raise ValueError("T must exceed the lag order")
    m, p, k = spec.n_regimes, spec.n_lags, spec.n_vars
    rng = np.random.default_rng(seed)
    total = T + burn_in

    uniforms = rng.random(total)
    shocks = rng.standard_normal((total, k))
    states = np.empty(total, dtype=int)
    states[0] = np.searchsorted(np.cumsum(model.initial_probs), uniforms[0])
    cum_rows = np.cumsum(model.transition, axis=1)
    for t in range(1, total):
        states[t] = np.searchsorted(cum_rows[states[t - 1]], uniforms[t])
    states = np.minimum(states, m - 1)

    chols = np.empty((m, k, k))
    for j in range(m):
        try:
            chols[j] = np.linalg.cholesky(model.covariances[j])
        except np.linalg.LinAlgError:
            raise DensityError(f"regime {j}: covariance not positive definite") from None

    y = np.zeros((total, k))
    for t in range(total):
        mean = model.intercepts[states[t]].copy()
        for i in range(1, p + 1):
            if t - i >= 0:
                mean += model.ar_coefs[i - 1] @ y[t - i]
        y[t] = mean + chols[states[t]] @ shocks[t]
    return y[burn_in:], states[burn_in:]


def from_var_model(
    var_model: VarModel,
    n_regimes: int = 2,
    transition: np.ndarray | None = None,
    switching_covariance: bool = False,
) -> MsVarModel:
    """Degenerate switching model with every regime equal to one linear VAR.

    Its filter likelihood equals the VAR's Gaussian likelihood for any
    transition matrix, which anchors the switching code to the linear one.
    """
    m, k, p = n_regimes, var_model.n_vars, var_model.n_lags
    if transition is None:
        transition = np.full((m, m), 1.0 / m)
    spec = MsVarSpec(m, p, k, switching_covariance=switching_covariance)
    return MsVarModel(
        spec=spec,
        intercepts=np.repeat(var_model.intercept[None], m, axis=0),
        ar_coefs=var_model.coefs.copy(),
        covariances=np.repeat(var_model.sigma[None], m, axis=0),
        transition=np.asarray(transition, dtype=float),
        initial_probs=np.full(m, 1.0 / m),
    )
