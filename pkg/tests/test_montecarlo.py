"""Click-simulation determinism, exact degenerate cases, and coverage."""

import math

import numpy as np
import pytest

from bpskrx.core import BinaryEnsemble, DetectorModel
from bpskrx.montecarlo import (
    RNG_ID,
    McConfig,
    McEstimate,
    derive_point_seed,
    simulate_type2,
    sweep_montecarlo,
)
from bpskrx.optimize import solve_type2_gamma_imperfect
from bpskrx.receivers import type2_imperfect_error

FIG4_DETECTOR = DetectorModel(eta=0.9, nu=1e-3, tau=0.99, xi=0.995)


def _config(alpha, detector, trials=100000, seed=20260814, gamma=None):
    ens = BinaryEnsemble(alpha)
    if gamma is None:
        gamma = solve_type2_gamma_imperfect(alpha, detector).value
    return McConfig(trials=trials, seed=seed, ensemble=ens, detector=detector, gamma=gamma)


def test_validation():
    ens = BinaryEnsemble(0.5)
    det = DetectorModel()
    with pytest.raises(ValueError):
        McConfig(0, 1, ens, det, 0.5)
    with pytest.raises(ValueError):
        McConfig(10, -1, ens, det, 0.5)
    with pytest.raises(ValueError):
        McConfig(10, 2**64, ens, det, 0.5)
    with pytest.raises(ValueError):
        McEstimate(p_hat=1.5, std_err=0.0, trials=10, seed=1)
    with pytest.raises(ValueError):
        McEstimate(p_hat=0.5, std_err=0.1, trials=10, seed=1)


def test_estimate_std_err_consistency():
    est = McEstimate(p_hat=0.25, std_err=math.sqrt(0.25 * 0.75 / 400), trials=400, seed=9)
    assert est.rng_id == RNG_ID


def test_deterministic_given_seed():
    a = simulate_type2(_config(0.5, FIG4_DETECTOR))
    b = simulate_type2(_config(0.5, FIG4_DETECTOR))
    assert a == b
    c = simulate_type2(_config(0.5, FIG4_DETECTOR, seed=20260815))
    assert c.p_hat != a.p_hat


def test_single_trial():
    est = simulate_type2(_config(0.5, FIG4_DETECTOR, trials=1, seed=3))
    assert est.p_hat in (0.0, 1.0)
    assert est.std_err == 0.0


def test_degenerate_detector_never_clicks():
    """eta = nu = 0: no clicks ever, every plus-trial errs, none of the
    minus trials do, so p_hat is the plus prior exactly."""
    det = DetectorModel(eta=0.0, nu=0.0)
    est = simulate_type2(_config(0.8, det, trials=10000, gamma=0.3))
    assert est.p_hat == 0.5


def test_degenerate_detector_always_clicks():
    # nu = 50 drives the click probability to 1 - 1e-22: with 1e4 draws the
    # chance of seeing a no-click is negligible and every minus trial errs
    det = DetectorModel(eta=1.0, nu=50.0)
    est = simulate_type2(_config(0.8, det, trials=10000, gamma=0.3))
    assert est.p_hat == 0.5


def test_estimate_tracks_analytic_value():
    truth = type2_imperfect_error(BinaryEnsemble(math.sqrt(0.5)), FIG4_DETECTOR).p_error
    est = simulate_type2(_config(math.sqrt(0.5), FIG4_DETECTOR, trials=10**6))
    z = (est.p_hat - truth) / est.std_err
    print(f"mc vs analytic: p_hat={est.p_hat}, truth={truth}, z={z:+.2f}")
    assert abs(z) < 4.0


def test_coverage_over_grid():
    """20 grid points, 3 sigma should capture nearly all; 5 sigma must."""
    grid = np.linspace(0.05, 2.0, 20)
    template = _config(1.0, FIG4_DETECTOR, trials=200000, seed=4242, gamma=1.0)
    results = sweep_montecarlo(grid, template)
    outside3 = 0
    for alpha_sq, est in zip(grid, results):
        truth = type2_imperfect_error(BinaryEnsemble(math.sqrt(alpha_sq)), FIG4_DETECTOR).p_error
        z = (est.p_hat - truth) / est.std_err
        assert abs(z) < 5.0
        if abs(z) > 3.0:
            outside3 += 1
    assert outside3 <= 1


def test_pooled_bias():
    """50 independent configurations: the standardized residuals average
    out, so the simulator is not systematically shifted."""
    rng = np.random.default_rng(7)
    zs = []
    for k in range(50):
        alpha = float(rng.uniform(0.2, 1.4))
        est = simulate_type2(_config(alpha, FIG4_DETECTOR, trials=50000, seed=1000 + k))
        truth = type2_imperfect_error(BinaryEnsemble(alpha), FIG4_DETECTOR).p_error
        zs.append((est.p_hat - truth) / est.std_err)
    zs = np.array(zs)
    print(f"pooled z: mean={zs.mean():+.3f}, max|z|={np.abs(zs).max():.2f}")
    assert abs(zs.mean()) < 0.5
    assert np.abs(zs).max() < 5.0


def test_sweep_single_point_equals_direct_call():
    template = _config(1.0, FIG4_DETECTOR, trials=5000, seed=11, gamma=123.0)
    swept = sweep_montecarlo([0.5], template)[0]
    direct = simulate_type2(
        _config(math.sqrt(0.5), FIG4_DETECTOR, trials=5000, seed=derive_point_seed(11, 0))
    )
    assert swept == direct


def test_sweep_rejects_empty_grid():
    with pytest.raises(ValueError):
        sweep_montecarlo([], _config(1.0, FIG4_DETECTOR))


def test_derive_point_seed_spreads():
    seeds = {derive_point_seed(20260814, i) for i in range(100)}
    assert len(seeds) == 100
    assert derive_point_seed(20260814, 0) == derive_point_seed(20260814, 0)
