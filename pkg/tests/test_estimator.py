"""Tests for the weighted least-squares rate estimator.

Statistical expectations (coverage, bootstrap agreement, detection
behaviour) were frozen from a 100-seed Monte Carlo study run against the
simulator before these tests were written.
"""

import numpy as np
import pytest

from confdop import (
    DegenerateDesign,
    MetricDecision,
    SimConfig,
    TrackingRecord,
    ZeroSigma,
    bootstrap_alpha,
    decide_metric,
    fit_alpha,
    simulate,
)
from confdop.constants import ASTRONOMICAL_UNIT, SPEED_OF_LIGHT

C = SPEED_OF_LIGHT


def pioneer_like_cfg(seed, n_obs=2000, alpha_true=2.19e-18, sigma_frac=1e-12):
    # outbound coast spanning 20 to 70 au
    v = 12200.0
    return SimConfig(
        r0=20.0 * ASTRONOMICAL_UNIT,
        v_radial=v,
        t_start=0.0,
        t_end=50.0 * ASTRONOMICAL_UNIT / v,
        n_obs=n_obs,
        alpha_true=alpha_true,
        sigma_frac=sigma_frac,
        sigma_range=0.0,
        seed=seed,
    )


def exact_recovery_cfg(alpha_true):
    # the radial rate is tiny (and a dyadic multiple of c) so that the
    # cancellation in y = c*frac - rate stays far below 1e-12 relative
    return SimConfig(
        r0=4.5e12,
        v_radial=C * 2**-40,
        t_start=0.0,
        t_end=1e12,
        n_obs=200,
        alpha_true=alpha_true,
        sigma_frac=0.0,
        sigma_range=0.0,
        seed=1,
    )


def make_records(r, rate, frac, sigma):
    return [
        TrackingRecord(
            epoch=float(i),
            range_true=float(r[i]),
            range_rate_true=float(rate[i]),
            range_meas=float(r[i]),
            doppler_frac_meas=float(frac[i]),
            sigma_frac=float(sigma[i]),
        )
        for i in range(len(r))
    ]


class TestFitAlpha:
    def test_noiseless_zero_alpha_is_exact(self):
        # dyadic rate: (v/c)*c round-trips exactly, so every residual is 0.0
        cfg = SimConfig(
            r0=4.5e12,
            v_radial=C * 2**-13,
            t_start=0.0,
            t_end=1e8,
            n_obs=50,
            alpha_true=0.0,
            sigma_frac=0.0,
            sigma_range=0.0,
            seed=1,
        )
        fit = fit_alpha(simulate(cfg))
        assert fit.alpha_hat == 0.0
        assert fit.z_score_alpha_zero == 0.0
        assert fit.n_used == 50
        assert fit.dof == 49

    def test_noiseless_recovery_at_hubble_rate(self):
        cfg = exact_recovery_cfg(2.19e-18)
        fit = fit_alpha(simulate(cfg))
        assert fit.alpha_hat == pytest.approx(2.19e-18, rel=1e-12)

    def test_coverage_over_seeds(self):
        # quick slice of the frozen 100-seed study (full run in acceptance)
        hits = 0
        for seed in range(10):
            cfg = pioneer_like_cfg(seed)
            fit = fit_alpha(simulate(cfg))
            if abs(fit.alpha_hat - cfg.alpha_true) < 3.0 * fit.alpha_stderr:
                hits += 1
        assert hits >= 9

    def test_stderr_positive_and_dof(self):
        fit = fit_alpha(simulate(pioneer_like_cfg(0)))
        assert fit.alpha_stderr > 0.0
        assert fit.dof == fit.n_used - 1

    def test_scale_equivariance(self):
        # multiplying every sigma by a power of two scales stderr exactly
        # and leaves alpha_hat bit-identical
        records = simulate(pioneer_like_cfg(4))
        k = 4.0
        scaled = [
            TrackingRecord(
                epoch=r.epoch,
                range_true=r.range_true,
                range_rate_true=r.range_rate_true,
                range_meas=r.range_meas,
                doppler_frac_meas=r.doppler_frac_meas,
                sigma_frac=k * r.sigma_frac,
            )
            for r in records
        ]
        fit = fit_alpha(records)
        fit_k = fit_alpha(scaled)
        assert fit_k.alpha_hat == fit.alpha_hat
        assert fit_k.alpha_stderr == k * fit.alpha_stderr

    def test_rate_noise_widens_errors(self):
        records = simulate(pioneer_like_cfg(4))
        plain = fit_alpha(records)
        widened = fit_alpha(records, sigma_rate=C * 1e-12)
        assert widened.alpha_stderr == pytest.approx(np.sqrt(2.0) * plain.alpha_stderr, rel=1e-12)

    def test_chi2_scale(self):
        fit = fit_alpha(simulate(pioneer_like_cfg(8, n_obs=5000)))
        assert fit.chi2 / fit.dof == pytest.approx(1.0, rel=0.1)

    def test_too_few_records(self):
        records = simulate(pioneer_like_cfg(0))[:1]
        with pytest.raises(DegenerateDesign):
            fit_alpha(records)

    def test_equal_ranges_rejected(self):
        cfg = SimConfig(
            r0=4.5e12, v_radial=0.0, t_start=0.0, t_end=100.0, n_obs=10,
            alpha_true=0.0, sigma_frac=0.0, sigma_range=0.0, seed=0,
        )
        with pytest.raises(DegenerateDesign):
            fit_alpha(simulate(cfg))

    def test_mixed_zero_sigma_rejected(self):
        r = np.linspace(1e12, 2e12, 10)
        rate = np.zeros(10)
        frac = 1e-18 * r / C
        sigma = np.full(10, 1e-12)
        sigma[3] = 0.0
        with pytest.raises(ZeroSigma):
            fit_alpha(make_records(r, rate, frac, sigma))

    def test_negative_sigma_rejected(self):
        r = np.linspace(1e12, 2e12, 10)
        with pytest.raises(ZeroSigma):
            fit_alpha(make_records(r, np.zeros(10), np.zeros(10), np.full(10, -1.0)))


class TestBootstrap:
    def test_noiseless_data_gives_zero_spread(self):
        records = simulate(exact_recovery_cfg(2.19e-18))
        assert bootstrap_alpha(records, 200, seed=7) < 1e-30

    def test_matches_analytic_for_gaussian_noise(self):
        records = simulate(pioneer_like_cfg(5))
        fit = fit_alpha(records)
        boot = bootstrap_alpha(records, 300, seed=42)
        assert boot == pytest.approx(fit.alpha_stderr, rel=0.20)

    def test_deterministic_given_seed(self):
        records = simulate(pioneer_like_cfg(6, n_obs=500))
        assert bootstrap_alpha(records, 150, seed=11) == bootstrap_alpha(records, 150, seed=11)

    def test_rejects_too_few_resamples(self):
        records = simulate(pioneer_like_cfg(0, n_obs=100))
        with pytest.raises(ValueError):
            bootstrap_alpha(records, 99, seed=0)


class TestDecideMetric:
    def test_zero_z(self):
        fit = fit_alpha(simulate(exact_recovery_cfg(0.0)))
        assert decide_metric(fit) is MetricDecision.MINKOWSKI_CONSISTENT

    def test_threshold_crossing(self):
        # alpha ~ 5x the Hubble rate yields z around 10 at this noise level
        fit = fit_alpha(simulate(pioneer_like_cfg(3, alpha_true=1e-17)))
        assert abs(fit.z_score_alpha_zero) > 5.0
        assert decide_metric(fit, z_threshold=5.0) is MetricDecision.CONFORMAL_DETECTED

    def test_threshold_is_strict(self):
        from confdop.estimator import FitResult

        fit = FitResult(
            alpha_hat=5e-19, alpha_stderr=1e-19, chi2=0.0, dof=9,
            z_score_alpha_zero=5.0, n_used=10,
        )
        assert decide_metric(fit, z_threshold=5.0) is MetricDecision.MINKOWSKI_CONSISTENT
        assert decide_metric(fit, z_threshold=4.999) is MetricDecision.CONFORMAL_DETECTED


def test_fit_result_json_keys():
    fit = fit_alpha(simulate(pioneer_like_cfg(0, n_obs=100)))
    doc = fit.to_dict()
    assert set(doc) == {
        "alpha_hat", "alpha_stderr", "chi2", "dof", "z_score_alpha_zero", "n_used",
    }
