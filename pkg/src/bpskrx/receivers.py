"""Closed-form error probabilities of the binary coherent-state receivers.

Everything here evaluates the equal-prior discrimination error of the
ensemble {|alpha>, |-alpha>}: the quantum-mechanical floor, the sharp
homodyne (Gaussian) limit, and the photon-counting receivers that displace
(and optionally squeeze) the signal before an on/off detector.

Decision rule for all click receivers: the displacement is aimed so the
"minus" branch is (approximately) nulled, so no click decides minus and a
click decides plus.

Numerical policy: every formula is arranged so small error probabilities
come out as sums of nonnegative exponentially small terms (``expm1`` where
the textbook form would subtract sinh products from 1/2), keeping full
relative precision down to the underflow floor.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    BinaryEnsemble,
    DetectorModel,
    ReceiverResult,
    UnsupportedConfigurationError,
)
from .gaussian import bayes_error_from_contrast
from .optimize import (
    displaced_squeezed_error,
    solve_type1_params,
    solve_type2_gamma,
    solve_type2_gamma_imperfect,
)

__all__ = [
    "BinaryEnsemble",
    "DetectorModel",
    "ReceiverResult",
    "DEFAULT_ALPHA_SQ_GRID",
    "helstrom",
    "homodyne_limit",
    "homodyne_limit_attenuated",
    "kennedy_error",
    "kennedy_raw_error",
    "type1_error",
    "type2_error",
    "type2_imperfect_error",
    "mean_intensity",
]

#: Figure-style sweep grid: alpha^2 from 1e-2 to 10, log-spaced.
DEFAULT_ALPHA_SQ_GRID = np.logspace(-2.0, 1.0, 60)


def _require_equal_priors(ensemble: BinaryEnsemble, what: str) -> None:
    if not ensemble.equal_priors:
        raise UnsupportedConfigurationError(
            f"{what} is defined here for equal priors only "
            f"(got p_plus={ensemble.p_plus}, p_minus={ensemble.p_minus})"
        )


def helstrom(ensemble: BinaryEnsemble) -> float:
    """Minimum error probability allowed by quantum mechanics.

    ``(1 - sqrt(1 - exp(-4 alpha^2)))/2``, computed as
    ``u / (2 (1 + sqrt(1-u)))`` with ``u = exp(-4 alpha^2)`` so the value
    keeps full relative precision deep into the tail (the naive difference
    dies at ~1e-17).
    """
    _require_equal_priors(ensemble, "the minimum-error bound")
    u = math.exp(-4.0 * ensemble.alpha**2)
    return u / (2.0 * (1.0 + math.sqrt(1.0 - u)))


def homodyne_limit(ensemble: BinaryEnsemble) -> float:
    """Error of ideal sharp x-homodyne, the best Gaussian strategy.

    Equal priors give ``erfc(sqrt(2) alpha)/2``; general priors shift the
    decision threshold (handled by the shared Bayes formula at sharpness 1).
    """
    return bayes_error_from_contrast(ensemble, 1.0)


def homodyne_limit_attenuated(ensemble: BinaryEnsemble, detector: DetectorModel) -> float:
    """Homodyne limit with the signal attenuated to ``sqrt(tau) alpha``.

    Companion curve to `homodyne_limit` for comparisons against receivers
    that lose a tau fraction of the signal in a tap beamsplitter; emitted
    separately so either convention can be read off.
    """
    attenuated = BinaryEnsemble(
        math.sqrt(detector.tau) * ensemble.alpha, ensemble.p_plus, ensemble.p_minus
    )
    return bayes_error_from_contrast(attenuated, 1.0)


def _click_error(alpha: float, gamma: float, detector: DetectorModel) -> float:
    """Equal-prior error of a displacement receiver with nulling amplitude
    ``gamma`` under the full detector model.

    Exponent bookkeeping: with ``a = eta (tau alpha^2 + gamma^2)`` and
    ``b = 2 eta xi sqrt(tau) alpha gamma`` (AM-GM gives b <= a),

        P = 1/2 [ -expm1(-nu) + exp(-nu) (-expm1(b - a) + exp(-b - a)) ]

    which equals ``1/2 - exp(-nu - a) sinh(b)`` but never subtracts two
    nearly equal halves.
    """
    eta, nu, tau, xi = detector.eta, detector.nu, detector.tau, detector.xi
    a = eta * (tau * alpha * alpha + gamma * gamma)
    b = 2.0 * eta * xi * math.sqrt(tau) * alpha * gamma
    return 0.5 * (
        -math.expm1(-nu) + math.exp(-nu) * (-math.expm1(b - a) + math.exp(-b - a))
    )


def kennedy_error(
    ensemble: BinaryEnsemble, detector: DetectorModel = DetectorModel()
) -> ReceiverResult:
    """Displacement receiver with the non-optimized nulling choice.

    Displaces by ``gamma = sqrt(tau) alpha``, exactly cancelling the
    attenuated minus branch (for an ideal-coupling detector this is the
    textbook ``gamma = alpha``, and the error reduces to
    ``exp(-4 alpha^2)/2`` at eta = 1, nu = 0). See `kennedy_raw_error` for
    the variant that ignores the attenuation when aiming.
    """
    _require_equal_priors(ensemble, "the displacement receiver")
    gamma = math.sqrt(detector.tau) * ensemble.alpha
    return ReceiverResult(
        receiver="kennedy" if detector.ideal_coupling else "kennedy_imperfect",
        p_error=_click_error(ensemble.alpha, gamma, detector),
        gamma_opt=gamma,
        detector=detector,
    )


def kennedy_raw_error(
    ensemble: BinaryEnsemble, detector: DetectorModel = DetectorModel()
) -> ReceiverResult:
    """Displacement receiver aimed at the unattenuated amplitude.

    Uses ``gamma = alpha`` regardless of tau, the convention of a receiver
    calibrated before the loss. Coincides with `kennedy_error` at tau = 1.
    """
    _require_equal_priors(ensemble, "the displacement receiver")
    return ReceiverResult(
        receiver="kennedy_raw",
        p_error=_click_error(ensemble.alpha, ensemble.alpha, detector),
        gamma_opt=ensemble.alpha,
        detector=detector,
    )


def _require_ideal_coupling(detector: DetectorModel, what: str) -> None:
    if not detector.ideal_coupling:
        raise UnsupportedConfigurationError(
            f"{what} assumes tau = xi = 1; use the imperfect variant "
            f"(got tau={detector.tau}, xi={detector.xi})"
        )


def type2_error(
    ensemble: BinaryEnsemble, detector: DetectorModel = DetectorModel()
) -> ReceiverResult:
    """Displacement receiver with the optimal nulling amplitude.

    ``gamma_opt`` solves ``alpha = gamma tanh(2 eta alpha gamma)``; the
    error is ``1/2 - exp(-nu - eta (alpha^2 + gamma^2)) sinh(2 eta alpha
    gamma)`` in its stable arrangement. Always at or below the
    non-optimized receiver and strictly below the homodyne limit.
    """
    _require_equal_priors(ensemble, "the optimized displacement receiver")
    _require_ideal_coupling(detector, "the optimized displacement receiver")
    gamma = solve_type2_gamma(ensemble.alpha, detector.eta).value
    return ReceiverResult(
        receiver="type2",
        p_error=_click_error(ensemble.alpha, gamma, detector),
        gamma_opt=gamma,
        detector=detector,
    )


def type1_error(
    ensemble: BinaryEnsemble, detector: DetectorModel = DetectorModel()
) -> ReceiverResult:
    """Squeeze-plus-displace receiver at its jointly optimal parameters.

    Solves the coupled stationarity conditions for (beta_opt, r_opt) and
    evaluates the closed-form error there. Setting r = 0 in the formula
    recovers the optimized displacement receiver, so this one is never
    worse.
    """
    _require_equal_priors(ensemble, "the squeeze-displace receiver")
    _require_ideal_coupling(detector, "the squeeze-displace receiver")
    beta, r = solve_type1_params(ensemble.alpha, detector.eta).value
    return ReceiverResult(
        receiver="type1",
        p_error=displaced_squeezed_error(
            ensemble.alpha, beta, r, detector.eta, detector.nu
        ),
        beta_opt=beta,
        r_opt=r,
        detector=detector,
    )


def mean_intensity(
    sign: int, ensemble: BinaryEnsemble, beta: float, detector: DetectorModel
) -> float:
    """Mean photon number hitting the detector after displacing the
    (possibly attenuated, imperfectly mode-matched) signal by ``beta``.

    ``I = (1 - xi)(tau alpha^2 + beta^2) + xi (sign sqrt(tau) alpha + beta)^2``:
    the matched fraction xi interferes coherently, the rest adds in power.
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    alpha, tau, xi = ensemble.alpha, detector.tau, detector.xi
    coherent = (sign * math.sqrt(tau) * alpha + beta) ** 2
    return (1.0 - xi) * (tau * alpha * alpha + beta * beta) + xi * coherent


def type2_imperfect_error(
    ensemble: BinaryEnsemble, detector: DetectorModel
) -> ReceiverResult:
    """Optimized displacement receiver with transmission and mode-match
    imperfections folded in.

    ``gamma_opt`` solves ``xi sqrt(tau) alpha = gamma tanh(2 eta xi alpha
    gamma)`` and the error is ``1/2 - exp(-nu - eta (tau alpha^2 +
    gamma^2)) sinh(2 eta xi sqrt(tau) alpha gamma)`` (stable form). At
    ``tau = xi = 1`` both the solve and the evaluation follow the exact
    same floating-point path as `type2_error`.
    """
    _require_equal_priors(ensemble, "the optimized displacement receiver")
    gamma = solve_type2_gamma_imperfect(ensemble.alpha, detector).value
    return ReceiverResult(
        receiver="type2" if detector.ideal_coupling else "type2_imperfect",
        p_error=_click_error(ensemble.alpha, gamma, detector),
        gamma_opt=gamma,
        detector=detector,
    )
