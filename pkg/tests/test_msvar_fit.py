"""EM mechanics: ascent, fixed points, OLS equivalence, full fits."""

import numpy as np
import pytest

from conftest import random_small_model
from switchvar import msvar
from switchvar.errors import NonConvergenceError, RegimeCollapseError
from switchvar.msvar import (
    MsVarModel,
    MsVarSpec,
    em_step,
    from_var_model,
    hamilton_filter,
)
from switchvar.varbase import fit_var


def well_separated_truth(switching=True):
    return MsVarModel(
        MsVarSpec(2, 1, 2, switching),
        np.array([[1.0, 0.8], [-1.0, -0.6]]),
        np.array([[[0.5, -0.4], [0.4, 0.45]]]),
        np.stack(
            [
                np.array([[0.0400, 0.0300], [0.0300, 0.0625]]),
                np.array([[0.0900, 0.0630], [0.0630, 0.1225]])
                if switching
                else np.array([[0.0400, 0.0300], [0.0300, 0.0625]]),
            ]
        ),
        np.array([[0.8, 0.2], [0.25, 0.75]]),
        np.array([0.5, 0.5]),
    )


class TestEmStep:
    def test_ascent_from_random_starts(self):
        rng = np.random.default_rng(61)
        for trial in range(10):
            truth = random_small_model(rng, m=2, p=1, k=2)
            data, _ = msvar.simulate(truth, 250, seed=trial)
            model = random_small_model(rng, m=2, p=1, k=2)
            previous = None
            for _ in range(40):
                model, loglik = em_step(model, data)
                if previous is not None:
                    assert loglik >= previous - 1e-8
                previous = loglik

    def test_fixed_point_changes_little(self):
        truth = well_separated_truth()
        data, _ = msvar.simulate(truth, 600, seed=62)
        model = truth
        lls = []
        for _ in range(400):
            model, ll = em_step(model, data)
            lls.append(ll)
            if len(lls) > 1 and abs(lls[-1] - lls[-2]) < 1e-11:
                break
        model, ll_next = em_step(model, data)
        assert abs(ll_next - lls[-1]) < 1e-10

    def test_symmetric_start_reproduces_ols_var(self):
        rng = np.random.default_rng(63)
        data, _ = msvar.simulate(random_small_model(rng, 2, 2, 2, False), 400, seed=3)
        vm = fit_var(data, 2)
        symmetric = from_var_model(vm, n_regimes=2)
        updated, loglik = em_step(symmetric, data)
        assert loglik == pytest.approx(vm.loglik, abs=1e-9)
        np.testing.assert_allclose(updated.intercepts - vm.intercept, 0.0, atol=1e-12)
        np.testing.assert_allclose(updated.ar_coefs, vm.coefs, atol=1e-12)
        np.testing.assert_allclose(updated.covariances[0], vm.sigma, atol=1e-12)
        np.testing.assert_allclose(updated.covariances[1], vm.sigma, atol=1e-12)

    def test_identical_regime_model_matches_var_loglik(self):
        rng = np.random.default_rng(64)
        data, _ = msvar.simulate(random_small_model(rng, 2, 1, 2, False), 500, seed=4)
        vm = fit_var(data, 1)
        eq = from_var_model(vm, n_regimes=2)
        assert hamilton_filter(eq, data).loglik == pytest.approx(vm.loglik, abs=1e-6)

    def test_regime_collapse_raises(self):
        # regime 2 sits absurdly far from the data: zero effective weight
        model = MsVarModel(
            MsVarSpec(2, 0, 1, False),
            np.array([[0.0], [1e9]]),
            np.empty((0, 1, 1)),
            np.full((2, 1, 1), 1.0),
            np.array([[0.999, 0.001], [0.999, 0.001]]),
            np.array([1.0 - 1e-12, 1e-12]),
        )
        data = np.random.default_rng(65).standard_normal((200, 1))
        with pytest.raises(RegimeCollapseError):
            for _ in range(50):
                model, _ = em_step(model, data)


class TestFit:
    def test_recovers_well_separated_msih(self):
        truth = well_separated_truth()
        data, _ = msvar.simulate(truth, 4000, seed=66, burn_in=40)
        model, diag = msvar.fit(data, truth.spec, restarts=2, seed=5)
        assert diag.converged
        np.testing.assert_allclose(model.intercepts, truth.intercepts, rtol=0.1)
        np.testing.assert_allclose(model.ar_coefs, truth.ar_coefs, rtol=0.1)
        np.testing.assert_allclose(model.covariances, truth.covariances, rtol=0.1)
        np.testing.assert_allclose(model.transition, truth.transition, rtol=0.1)

    def test_trace_is_monotone(self):
        truth = well_separated_truth(switching=False)
        data, _ = msvar.simulate(truth, 800, seed=67)
        _, diag = msvar.fit(data, truth.spec, restarts=2, seed=6)
        diffs = np.diff(diag.loglik_trace)
        assert diffs.min() >= -1e-8
        assert diag.loglik == pytest.approx(diag.loglik_trace[-1])

    def test_canonical_ordering(self):
        truth = well_separated_truth()
        data, _ = msvar.simulate(truth, 1500, seed=68)
        model, _ = msvar.fit(data, truth.spec, restarts=2, seed=7)
        assert model.intercepts[0, 0] > model.intercepts[1, 0]

    def test_non_convergence_carries_best_attempt(self):
        truth = well_separated_truth()
        data, _ = msvar.simulate(truth, 900, seed=69)
        with pytest.raises(NonConvergenceError) as excinfo:
            msvar.fit(data, truth.spec, restarts=1, seed=8, max_iter=2, tol=1e-14)
        model, diag = excinfo.value.best
        assert isinstance(model, MsVarModel)
        assert not diag.converged

    def test_insufficient_data(self):
        from switchvar.errors import InsufficientDataError

        with pytest.raises(InsufficientDataError):
            msvar.fit(np.zeros((8, 2)), MsVarSpec(2, 1, 2, False))

    def test_seed_determinism(self):
        truth = well_separated_truth()
        data, _ = msvar.simulate(truth, 700, seed=70)
        a, diag_a = msvar.fit(data, truth.spec, restarts=3, seed=9)
        b, diag_b = msvar.fit(data, truth.spec, restarts=3, seed=9)
        np.testing.assert_array_equal(a.intercepts, b.intercepts)
        np.testing.assert_array_equal(a.transition, b.transition)
        np.testing.assert_array_equal(diag_a.loglik_trace, diag_b.loglik_trace)
