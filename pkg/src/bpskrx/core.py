"""Shared value types and exceptions for the BPSK receiver toolkit.

The two problem-defining records live here so that every other module
(Gaussian algebra, Fock oracle, receivers, optimizer, Monte Carlo, CLI)
can import them without circular dependencies:

* :class:`BinaryEnsemble` -- the discrimination instance {|alpha>, |-alpha>}
  with prior probabilities.
* :class:`DetectorModel` -- on/off detector and coupling imperfections
  (quantum efficiency eta, dark counts nu, transmittance tau, mode match xi).
* :class:`ReceiverResult` -- a computed error probability with its operating
  parameters and provenance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class DimensionMismatchError(ValueError):
    """Operator and state dimensions do not match."""


class SingularMatrixError(ArithmeticError):
    """A matrix that must be inverted is singular or too ill-conditioned.

    Carries the estimated condition number in ``cond``.
    """

    def __init__(self, message: str, cond: float = math.inf):
        super().__init__(f"{message} (condition number ~ {cond:.3e})")
        self.cond = cond


class NotPureError(ValueError):
    """Input covariance is not a pure state. Carries the offending symplectic
    eigenvalue in ``eigenvalue``."""

    def __init__(self, eigenvalue: float):
        super().__init__(
            f"covariance is not pure: symplectic eigenvalue {eigenvalue!r} != 1"
        )
        self.eigenvalue = eigenvalue


class BracketError(ArithmeticError):
    """No sign change found while expanding a root bracket."""


class ConvergenceError(ArithmeticError):
    """An iterative solve failed. ``best`` carries the best point found."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class TruncationError(ArithmeticError):
    """Fock-space truncation could not reach the requested tolerance."""


class UnsupportedConfigurationError(ValueError):
    """The requested parameter combination has no implemented formula."""


class CsvFormatError(ValueError):
    """A CSV input does not conform to the sweep schema.

    ``line`` is the offending 1-based line number.
    """

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class BinaryEnsemble:
    """Binary coherent signal {|alpha>, |-alpha>} with prior probabilities.

    ``alpha`` is the real signal amplitude (mean photon number alpha**2).
    Default priors are equal, which is what every photon-counting receiver
    in this package assumes.
    """

    alpha: float
    p_plus: float = 0.5
    p_minus: float = 0.5

    def __post_init__(self):
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        for name, p in (("p_plus", self.p_plus), ("p_minus", self.p_minus)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
        if abs(self.p_plus + self.p_minus - 1.0) > 1e-12:
            raise ValueError(
                f"priors must sum to 1 within 1e-12, got {self.p_plus + self.p_minus!r}"
            )

    @property
    def equal_priors(self) -> bool:
        return self.p_plus == self.p_minus


@dataclass(frozen=True)
class DetectorModel:
    """On/off detector with coupling imperfections.

    eta: quantum efficiency in [0, 1].
    nu:  mean dark counts per pulse (the no-click probability gets a factor
         exp(-nu)), dimensionless.
    tau: transmittance of the displacement beamsplitter in [0, 1].
    xi:  mode-match factor between signal and local oscillator in [0, 1].
    """

    eta: float = 1.0
    nu: float = 0.0
    tau: float = 1.0
    xi: float = 1.0

    def __post_init__(self):
        for name, x in (("eta", self.eta), ("tau", self.tau), ("xi", self.xi)):
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
        if not (self.nu >= 0.0 and math.isfinite(self.nu)):
            raise ValueError(f"nu must be finite and >= 0, got {self.nu!r}")

    @property
    def ideal_coupling(self) -> bool:
        """True when tau = xi = 1 (no beamsplitter loss, perfect mode match)."""
        return self.tau == 1.0 and self.xi == 1.0


#: Receiver tags understood by the sweep machinery.
RECEIVER_TAGS = (
    "helstrom",
    "homodyne",
    "homodyne_tau",
    "kennedy",
    "kennedy_imperfect",
    "kennedy_raw",
    "type1",
    "type2",
    "type2_imperfect",
)


@dataclass(frozen=True)
class ReceiverResult:
    """Error probability of one receiver at one operating point.

    Optional operating parameters are populated only where they apply
    (beta_opt/r_opt for the displacement+squeezing receiver, gamma_opt for
    displacement-only receivers). ``provenance`` records how the number was
    obtained: "analytic", "fock", or "montecarlo".
    """

    receiver: str
    p_error: float
    provenance: str = "analytic"
    beta_opt: float | None = None
    r_opt: float | None = None
    gamma_opt: float | None = None
    detector: DetectorModel = field(default_factory=DetectorModel)

    def __post_init__(self):
        if self.receiver not in RECEIVER_TAGS:
            raise ValueError(f"unknown receiver tag {self.receiver!r}")
        if self.provenance not in ("analytic", "fock", "montecarlo"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
