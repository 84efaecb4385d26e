"""Multimode Gaussian-state algebra.

Covariance-matrix representation of Gaussian states, symplectic transforms,
partial Gaussian measurements with conditional outputs, Gaussian-POVM
derivation from a physical homodyne model, and the Bayes error of single-mode
Gaussian measurements on the binary coherent ensemble.

Conventions (fixed throughout the package):

* Quadrature ordering ``(x1, p1, x2, p2, ...)``.
* Vacuum covariance is the identity; a coherent state of real amplitude
  ``alpha`` has displacement ``[sqrt(2)*alpha, 0]``.
* A squeezer with parameter ``r`` maps ``x -> exp(-r) x``, ``p -> exp(r) p``.
* The symplectic form is ``Omega = diag([[0, 1], [-1, 0]], ...)`` per mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag, eigh, solve
from scipy.special import erfc

from .core import (
    BinaryEnsemble,
    DimensionMismatchError,
    NotPureError,
    SingularMatrixError,
)

__all__ = [
    "GaussianState",
    "SymplecticOp",
    "GaussianMeasurementSpec",
    "ConditionedState",
    "ConditionalOutput",
    "GaussianPovm",
    "symplectic_form",
    "vacuum",
    "coherent_state",
    "tensor",
    "beamsplitter",
    "phase_rotation",
    "squeezer",
    "random_symplectic",
    "measurement_cov",
    "apply_gaussian_unitary",
    "condition_on_partial_measurement",
    "binary_conditional_output",
    "pure_normal_form",
    "concentrate_displacement",
    "povm_from_physical_model",
    "contrast_factor",
    "bayes_error_from_contrast",
    "bayes_error_gaussian",
]

#: Condition-number guard for every matrix solve in this module.
COND_LIMIT = 1e12

_OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the 2n x 2n symplectic form for the (x1, p1, ...) ordering."""
    return block_diag(*([_OMEGA_1] * n_modes))


def _check_uncertainty(cov: np.ndarray, what: str) -> None:
    """Assert cov + i*Omega >= 0 (eigenvalues above a scale-aware -1e-10)."""
    n = cov.shape[0] // 2
    h = cov + 1j * symplectic_form(n)
    eigs = np.linalg.eigvalsh(h)
    floor = -1e-10 * max(1.0, float(np.abs(cov).max()))
    if eigs.min() < floor:
        raise ValueError(
            f"{what} violates the uncertainty relation: "
            f"min eig(cov + i Omega) = {eigs.min():.3e}"
        )


@dataclass(frozen=True)
class GaussianState:
    """Gaussian state: covariance matrix plus displacement vector.

    Parameters
    ----------
    cov : (2n, 2n) real symmetric array
        Covariance matrix, vacuum = identity.
    disp : (2n,) real array
        Mean quadrature vector.
    """

    cov: np.ndarray
    disp: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        disp = np.array(self.disp, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
            raise DimensionMismatchError(f"covariance shape {cov.shape} is not 2n x 2n")
        if disp.shape != (cov.shape[0],):
            raise DimensionMismatchError(
                f"displacement shape {disp.shape} does not match covariance {cov.shape}"
            )
        if np.abs(cov - cov.T).max() > 1e-12:
            raise ValueError("covariance is not symmetric within 1e-12")
        _check_uncertainty(cov, "state covariance")
        cov.setflags(write=False)
        disp.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "disp", disp)

    @property
    def n_modes(self) -> int:
        return self.disp.shape[0] // 2

    def symplectic_eigenvalues(self) -> np.ndarray:
        """Sorted symplectic eigenvalues (each appears twice in the output)."""
        return np.sort(np.abs(np.linalg.eigvals(symplectic_form(self.n_modes) @ self.cov)))

    def is_pure(self, tol: float = 1e-6) -> bool:
        return bool(np.abs(self.symplectic_eigenvalues() - 1.0).max() <= tol)


def vacuum(n_modes: int) -> GaussianState:
    """The n-mode vacuum."""
    return GaussianState(np.eye(2 * n_modes), np.zeros(2 * n_modes))


def coherent_state(alpha: float) -> GaussianState:
    """Single-mode coherent state of real amplitude ``alpha``."""
    return GaussianState(np.eye(2), np.array([math.sqrt(2.0) * alpha, 0.0]))


def tensor(*states: GaussianState) -> GaussianState:
    """Tensor product (direct sum of covariances, concatenated displacements)."""
    cov = block_diag(*[s.cov for s in states])
    disp = np.concatenate([s.disp for s in states])
    return GaussianState(cov, disp)


@dataclass(frozen=True)
class SymplecticOp:
    """Gaussian unitary in phase space: ``z -> S z + offset``."""

    matrix: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        s = np.array(self.matrix, dtype=float)
        d = np.array(self.offset, dtype=float)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
            raise DimensionMismatchError(f"symplectic matrix shape {s.shape}")
        if d.shape != (s.shape[0],):
            raise DimensionMismatchError("offset length does not match matrix")
        omega = symplectic_form(s.shape[0] // 2)
        if np.abs(s @ omega @ s.T - omega).max() > 1e-10:
            raise ValueError("matrix is not symplectic within 1e-10")
        s.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "matrix", s)
        object.__setattr__(self, "offset", d)

    @property
    def n_modes(self) -> int:
        return self.offset.shape[0] // 2

    @staticmethod
    def identity(n_modes: int) -> "SymplecticOp":
        return SymplecticOp(np.eye(2 * n_modes), np.zeros(2 * n_modes))

    def compose(self, inner: "SymplecticOp") -> "SymplecticOp":
        """Return the op that applies ``inner`` first, then ``self``."""
        if inner.n_modes != self.n_modes:
            raise DimensionMismatchError("cannot compose ops of different sizes")
        return SymplecticOp(
            self.matrix @ inner.matrix, self.matrix @ inner.offset + self.offset
        )


def _embed(n_modes: int, modes: tuple[int, ...], block: np.ndarray) -> np.ndarray:
    """Embed a small symplectic block acting on ``modes`` into 2n x 2n."""
    s = np.eye(2 * n_modes)
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
    s[np.ix_(idx, idx)] = block
    return s


def beamsplitter(theta: float, n_modes: int = 2, modes: tuple[int, int] = (0, 1)) -> SymplecticOp:
    """Beamsplitter of mixing angle ``theta`` between two modes.

    ``theta = pi/4`` is the balanced (50:50) splitter.
    """
    c, s = math.cos(theta), math.sin(theta)
    i2 = np.eye(2)
    block = np.block([[c * i2, -s * i2], [s * i2, c * i2]])
    return SymplecticOp(_embed(n_modes, modes, block), np.zeros(2 * n_modes))


def phase_rotation(phi: float, n_modes: int = 1, mode: int = 0) -> SymplecticOp:
    """Single-mode phase-space rotation by angle ``phi``."""
    c, s = math.cos(phi), math.sin(phi)
    block = np.array([[c, s], [-s, c]])
    return SymplecticOp(_embed(n_modes, (mode,), block), np.zeros(2 * n_modes))


def squeezer(r: float, n_modes: int = 1, mode: int = 0) -> SymplecticOp:
    """Single-mode squeezer: x -> exp(-r) x, p -> exp(r) p."""
    block = np.diag([math.exp(-r), math.exp(r)])
    return SymplecticOp(_embed(n_modes, (mode,), block), np.zeros(2 * n_modes))


def random_symplectic(n_modes: int, rng: np.random.Generator, layers: int | None = None) -> SymplecticOp:
    """Seeded generic symplectic: layered beamsplitters, rotations, squeezers.

    Each of the ``3 * n_modes`` default layers applies a beamsplitter with
    uniform angle on a random mode pair (skipped for one mode), a uniform
    phase rotation on a random mode, and a squeeze with r uniform in
    [0, 1.5] on a random mode. Spans generic symplectics without Haar
    machinery; the draw order is fixed, so results are reproducible from
    the generator state.
    """
    if layers is None:
        layers = 3 * n_modes
    op = SymplecticOp.identity(n_modes)
    for _ in range(layers):
        if n_modes >= 2:
            i, j = rng.choice(n_modes, size=2, replace=False)
            op = beamsplitter(rng.uniform(0.0, 2.0 * math.pi), n_modes, (int(i), int(j))).compose(op)
        op = phase_rotation(rng.uniform(0.0, 2.0 * math.pi), n_modes, int(rng.integers(n_modes))).compose(op)
        op = squeezer(rng.uniform(0.0, 1.5), n_modes, int(rng.integers(n_modes))).compose(op)
    return op


def measurement_cov(r: float, phi: float) -> np.ndarray:
    """Covariance of a general single-mode Gaussian measurement.

    ``[[c-, s], [s, c+]]`` with ``c_pm = cosh(2r) +- sinh(2r) cos(phi)`` and
    ``s = sinh(2r) sin(phi)``; determinant is exactly 1. ``(r, 0)`` with
    large ``r`` approaches sharp x-homodyne, ``r = 0`` is heterodyne.
    """
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    c_minus = ch - sh * math.cos(phi)
    c_plus = ch + sh * math.cos(phi)
    s = sh * math.sin(phi)
    return np.array([[c_minus, s], [s, c_plus]])


@dataclass(frozen=True)
class GaussianMeasurementSpec:
    """A Gaussian measurement on K modes: covariance ``cov`` plus the
    observed outcome vector ``outcome`` (length 2K)."""

    cov: np.ndarray
    outcome: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        outcome = np.array(self.outcome, dtype=float)
        if cov.size:
            if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
                raise DimensionMismatchError(f"measurement covariance shape {cov.shape}")
            if np.abs(cov - cov.T).max() > 1e-12:
                raise ValueError("measurement covariance is not symmetric")
            _check_uncertainty(cov, "measurement covariance")
        if outcome.shape != (cov.shape[0] if cov.size else 0,):
            raise DimensionMismatchError("outcome length does not match covariance")
        cov.setflags(write=False)
        outcome.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "outcome", outcome)

    @property
    def n_modes(self) -> int:
        return self.outcome.shape[0] // 2

    @classmethod
    def homodyne(cls, r: float, phi: float, outcome=(0.0, 0.0)) -> "GaussianMeasurementSpec":
        """Single-mode measurement from the (r, phi) parameterization."""
        return cls(measurement_cov(r, phi), np.asarray(outcome, dtype=float))

    @classmethod
    def homodyne_stack(cls, rs, phis, outcome=None) -> "GaussianMeasurementSpec":
        """Independent single-mode measurements on K modes."""
        cov = block_diag(*[measurement_cov(r, p) for r, p in zip(rs, phis)])
        if outcome is None:
            outcome = np.zeros(cov.shape[0])
        return cls(cov, np.asarray(outcome, dtype=float))


def apply_gaussian_unitary(state: GaussianState, op: SymplecticOp) -> GaussianState:
    """Transform a state: cov -> S cov S^T, disp -> S disp + offset."""
    if op.n_modes != state.n_modes:
        raise DimensionMismatchError(
            f"op acts on {op.n_modes} modes, state has {state.n_modes}"
        )
    cov = op.matrix @ state.cov @ op.matrix.T
    cov = 0.5 * (cov + cov.T)
    return GaussianState(cov, op.matrix @ state.disp + op.offset)


def _guarded_solve(m: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrixError(what, float(cond))
    return solve(m, rhs, assume_a="sym")


@dataclass(frozen=True)
class ConditionedState:
    """One conditional branch: output covariance, displacement, and the
    normalized outcome density (integrates to 1 over the outcome vector)."""

    cov: np.ndarray
    disp: np.ndarray
    density: float


def condition_on_partial_measurement(
    state: GaussianState, keep_modes: int, meas: GaussianMeasurementSpec
) -> ConditionedState:
    """Condition a state on a Gaussian measurement of its trailing modes.

    The measurement acts on modes ``keep_modes+1 ... M``. With the covariance
    split into blocks A (kept), B (measured), C (cross), and the measurement
    covariance ``gamma_M`` with outcome ``d_M``:

    * output covariance  ``A - C (B + gamma_M)^{-1} C^T``  (outcome-independent),
    * output displacement ``d_A - C (B + gamma_M)^{-1} (d_B - d_M)``,
    * outcome density ``pi^{-K} det(B + gamma_M)^{-1/2}
      exp[-(d_B - d_M)^T (B + gamma_M)^{-1} (d_B - d_M)]``.

    The density is normalized: integrating it over all outcomes gives 1.

    Raises
    ------
    SingularMatrixError
        If ``B + gamma_M`` has condition number above ``COND_LIMIT``.
    """
    k = state.n_modes - keep_modes
    if k < 0 or meas.n_modes != k:
        raise DimensionMismatchError(
            f"measurement covers {meas.n_modes} modes, state leaves {k} to measure"
        )
    if k == 0:
        return ConditionedState(state.cov, state.disp, 1.0)
    na = 2 * keep_modes
    a = state.cov[:na, :na]
    b = state.cov[na:, na:]
    c = state.cov[:na, na:]
    m = b + meas.cov
    x = _guarded_solve(m, c.T, "B + gamma_M is numerically singular")
    cov_out = a - c @ x
    cov_out = 0.5 * (cov_out + cov_out.T)
    v = state.disp[na:] - meas.outcome
    w = _guarded_solve(m, v, "B + gamma_M is numerically singular")
    disp_out = state.disp[:na] - c @ w
    sign, logdet = np.linalg.slogdet(m)
    if sign <= 0:
        raise SingularMatrixError("B + gamma_M is not positive definite", math.inf)
    log_density = -k * math.log(math.pi) - 0.5 * logdet - float(v @ w)
    return ConditionedState(cov_out, disp_out, math.exp(log_density))


@dataclass(frozen=True)
class ConditionalOutput:
    """Both conditional branches of the binary ensemble after a Gaussian
    operation with a partial measurement.

    The displacements decompose as ``D_pm = pm disp_signal + disp_offset``:
    ``disp_signal`` carries the signal amplitude and is outcome-independent,
    ``disp_offset`` is affine in the measurement outcome. Both branches share
    the covariance ``shared_cov`` exactly (same formula, no outcome
    dependence); ``weight_plus/minus`` are the priors times the normalized
    outcome densities.
    """

    state_plus: GaussianState
    state_minus: GaussianState
    weight_plus: float
    weight_minus: float
    shared_cov: np.ndarray
    disp_signal: np.ndarray
    disp_offset: np.ndarray


def binary_conditional_output(
    ensemble: BinaryEnsemble, op: SymplecticOp, meas: GaussianMeasurementSpec
) -> ConditionalOutput:
    """Feed |+alpha> and |-alpha> (signal in mode 1, vacuum elsewhere) through
    a Gaussian unitary, then condition on a measurement of the trailing modes.

    Returns both branches with the shared output covariance and the
    decomposition of their displacements into the antisymmetric signal part
    and the common outcome-dependent offset.
    """
    m_modes = op.n_modes
    k = meas.n_modes
    if k > m_modes:
        raise DimensionMismatchError("measurement covers more modes than the op")
    na = 2 * (m_modes - k)
    s = op.matrix
    cov = s @ s.T  # input covariance is the identity for coherent branches
    cov = 0.5 * (cov + cov.T)
    d_sig = np.zeros(2 * m_modes)
    d_sig[0] = math.sqrt(2.0) * ensemble.alpha
    s_sig = s @ d_sig
    offs = op.offset

    if k == 0:
        cov.setflags(write=False)
        disp_signal = s_sig
        disp_offset = offs.copy()
        dens_plus = dens_minus = 1.0
    else:
        a = cov[:na, :na]
        b = cov[na:, na:]
        c = cov[:na, na:]
        mm = b + meas.cov
        x = _guarded_solve(mm, c.T, "B + gamma_M is numerically singular")
        cov_out = a - c @ x
        cov = 0.5 * (cov_out + cov_out.T)
        cov.setflags(write=False)
        w_sig = _guarded_solve(mm, s_sig[na:], "B + gamma_M is numerically singular")
        disp_signal = s_sig[:na] - c @ w_sig
        v_off = offs[na:] - meas.outcome
        w_off = _guarded_solve(mm, v_off, "B + gamma_M is numerically singular")
        disp_offset = offs[:na] - c @ w_off
        sign, logdet = np.linalg.slogdet(mm)
        if sign <= 0:
            raise SingularMatrixError("B + gamma_M is not positive definite", math.inf)
        log_norm = -k * math.log(math.pi) - 0.5 * logdet
        v_plus = (s_sig[na:] + offs[na:]) - meas.outcome
        v_minus = (-s_sig[na:] + offs[na:]) - meas.outcome
        dens_plus = math.exp(
            log_norm - float(v_plus @ _guarded_solve(mm, v_plus, "B + gamma_M"))
        )
        dens_minus = math.exp(
            log_norm - float(v_minus @ _guarded_solve(mm, v_minus, "B + gamma_M"))
        )

    return ConditionalOutput(
        state_plus=GaussianState(cov, disp_offset + disp_signal),
        state_minus=GaussianState(cov, disp_offset - disp_signal),
        weight_plus=ensemble.p_plus * dens_plus,
        weight_minus=ensemble.p_minus * dens_minus,
        shared_cov=cov,
        disp_signal=disp_signal,
        disp_offset=disp_offset,
    )


def pure_normal_form(cov: np.ndarray) -> SymplecticOp:
    """Symplectic transform taking a pure covariance to the identity.

    For a pure Gaussian covariance ``Gamma = S S^T`` the inverse symmetric
    square root ``Gamma^{-1/2}`` is the inverse of the symplectic polar
    factor of ``S``, hence itself symplectic, and satisfies
    ``S_D Gamma S_D^T = I`` by construction. Computed by eigendecomposition,
    so the output is deterministic.

    Raises
    ------
    NotPureError
        If any symplectic eigenvalue of ``cov`` deviates from 1 by more
        than 1e-6 (the offending eigenvalue is reported).
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    nus = np.abs(np.linalg.eigvals(symplectic_form(n) @ cov))
    worst = nus[np.argmax(np.abs(nus - 1.0))]
    if abs(worst - 1.0) > 1e-6:
        raise NotPureError(float(worst))
    w, v = eigh(cov)
    s_d = (v / np.sqrt(w)) @ v.T
    s_d = 0.5 * (s_d + s_d.T)
    return SymplecticOp(s_d, np.zeros(2 * n))


def concentrate_displacement(d: np.ndarray) -> SymplecticOp:
    """Passive (orthogonal symplectic) transform mapping ``d`` to
    ``[||d||, 0, ..., 0]``.

    Built from a complex Householder reflection on the mode amplitudes
    ``z_k = d_{2k} + i d_{2k+1}``, phase-corrected so the image lies on the
    positive x axis of mode 1. Leaves the identity covariance invariant.
    ``d = 0`` returns the identity (documented convention).
    """
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or d.shape[0] % 2:
        raise DimensionMismatchError(f"displacement shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("displacement must be finite")
    n = d.shape[0] // 2
    nrm = float(np.linalg.norm(d))
    if nrm == 0.0:
        return SymplecticOp.identity(n)
    z = d[0::2] + 1j * d[1::2]
    w = z / nrm
    phase = np.exp(1j * np.angle(w[0]))
    u = w.copy()
    u[0] += phase
    h = np.eye(n, dtype=complex) - 2.0 * np.outer(u, u.conj()) / float((u.conj() @ u).real)
    uni = h.copy()
    uni[0, :] *= -np.conj(phase)
    s = np.zeros((2 * n, 2 * n))
    s[0::2, 0::2] = uni.real
    s[0::2, 1::2] = -uni.imag
    s[1::2, 0::2] = uni.imag
    s[1::2, 1::2] = uni.real
    return SymplecticOp(s, np.zeros(2 * n))


@dataclass(frozen=True)
class GaussianPovm:
    """Effective Gaussian POVM element family on the signal modes.

    ``cov`` is the (outcome-independent) POVM covariance; the POVM center for
    homodyne record ``d_hd`` is the affine map ``delta(d_hd) = linear @ d_hd
    + offset``.
    """

    cov: np.ndarray
    linear: np.ndarray
    offset: np.ndarray

    def delta(self, d_hd: np.ndarray) -> np.ndarray:
        return self.linear @ np.asarray(d_hd, dtype=float) + self.offset


def povm_from_physical_model(
    unitary: SymplecticOp,
    n_signal: int,
    aux: tuple[GaussianState, ...] = (),
    squeeze_r: float = 8.0,
) -> GaussianPovm:
    """Effective POVM realized by mixing the signal with pure ancilla modes
    through a Gaussian unitary and x-homodyning every output.

    Each of the ``N = n_signal + n_aux`` output modes is measured with the
    single-mode covariance ``diag(exp(-2 squeeze_r), exp(2 squeeze_r))``;
    the sharp-homodyne limit is approximated by finite ``squeeze_r``
    (default 8). Writing ``T = S^{-1}`` (the measurement covariance is
    back-transported through the unitary, which for symplectic ``S`` is
    ``T Gamma_HD T^T``; this reduces to ``S^T Gamma_HD S`` only when ``S``
    is orthogonal) and splitting into signal/ancilla blocks A, B, C, the
    POVM covariance is the Schur complement

        Gamma = G_A - G_C (Gamma_aux + G_B)^{-1} G_C^T

    and the POVM center is affine in the homodyne record ``d_hd``:

        delta(d_hd) = [T (d_hd - off)]_A
                      + G_C (Gamma_aux + G_B)^{-1} (d_aux - [T (d_hd - off)]_B).
    """
    if not math.isfinite(squeeze_r):
        raise ValueError("squeeze_r must be finite (the sharp limit is approximated)")
    n = unitary.n_modes
    nb = n - n_signal
    if nb < 0:
        raise DimensionMismatchError("n_signal exceeds the unitary's mode count")
    if sum(a.n_modes for a in aux) != nb:
        raise DimensionMismatchError(
            f"ancilla states cover {sum(a.n_modes for a in aux)} modes, need {nb}"
        )
    for a in aux:
        if not a.is_pure():
            raise NotPureError(float(a.symplectic_eigenvalues().max()))

    l_hd = block_diag(
        *([np.diag([math.exp(-squeeze_r), math.exp(squeeze_r)])] * n)
    )
    omega = symplectic_form(n)
    t = -omega @ unitary.matrix.T @ omega  # symplectic inverse of S
    tl = t @ l_hd
    g = tl @ tl.T  # Gram form of T Gamma_HD T^T, positive by construction
    na = 2 * n_signal
    t_a, t_b = t[:na, :], t[na:, :]
    d_bar = unitary.offset

    if nb == 0:
        cov = 0.5 * (g + g.T)
        linear = t_a
        offset = -t_a @ d_bar
    else:
        g_a = g[:na, :na]
        g_b = g[na:, na:]
        g_c = g[:na, na:]
        g_aux = block_diag(*[a.cov for a in aux])
        d_aux = np.concatenate([a.disp for a in aux])
        m = g_aux + g_b
        x = _guarded_solve(m, g_c.T, "Gamma_aux + Gamma_B is numerically singular")
        cov = g_a - g_c @ x
        cov = 0.5 * (cov + cov.T)
        linear = t_a - x.T @ t_b
        offset = -linear @ d_bar + x.T @ d_aux
    # Physical-validity check. Models that realize heterodyne-like POVMs sit
    # exactly on the boundary of cov + i Omega >= 0, and the achievable
    # accuracy there is set by rounding in the exp(+-2 squeeze_r)-scaled
    # intermediate, so the tolerance scales with that intermediate's size.
    h = cov + 1j * symplectic_form(n_signal)
    floor = -1e-10 * max(1.0, float(np.abs(g).max()))
    low = np.linalg.eigvalsh(h).min()
    if low < floor:
        raise ValueError(
            f"derived POVM covariance violates the uncertainty relation: "
            f"min eig(cov + i Omega) = {low:.3e}"
        )
    return GaussianPovm(cov=cov, linear=linear, offset=offset)


def contrast_factor(r: float, phi: float) -> float:
    """Sharpness factor e(r, phi) of a single-mode Gaussian measurement.

    ``e = (1 + cosh 2r + sinh 2r cos phi) / (2 (1 + cosh 2r))``, in [0, 1].
    ``e -> 1`` for sharp x-homodyne (r -> inf, phi = 0); ``r = math.inf``
    takes the exact limit ``(1 + cos phi)/2`` so the ideal case carries no
    truncation artifact.
    """
    if math.isinf(r):
        return 0.5 * (1.0 + math.cos(phi))
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    return (1.0 + ch + sh * math.cos(phi)) / (2.0 * (1.0 + ch))


def bayes_error_from_contrast(ensemble: BinaryEnsemble, e: float) -> float:
    """Bayesian error probability of a Gaussian measurement with sharpness e.

    Equal priors give ``erfc(sqrt(2) e alpha) / 2``. General priors shift the
    decision threshold, adding ``+- ln(p+/p-) / (4 e sqrt(2) alpha)`` inside
    the two erfc terms. Degenerate cases: zero amplitude or ``e = 0`` carry
    no information, so the best strategy guesses the larger prior.
    """
    alpha = ensemble.alpha
    if ensemble.p_plus == 0.0 or ensemble.p_minus == 0.0:
        return 0.0
    if alpha == 0.0 or e <= 0.0:
        return min(ensemble.p_plus, ensemble.p_minus)
    arg = e * math.sqrt(2.0) * alpha
    if ensemble.equal_priors:
        return float(0.5 * erfc(arg))
    shift = math.log(ensemble.p_plus / ensemble.p_minus) / (4.0 * arg)
    return float(
        0.5
        * (ensemble.p_plus * erfc(arg + shift) + ensemble.p_minus * erfc(arg - shift))
    )


def bayes_error_gaussian(ensemble: BinaryEnsemble, r: float, phi: float) -> float:
    """Bayes error of the (r, phi) single-mode Gaussian measurement."""
    return bayes_error_from_contrast(ensemble, contrast_factor(r, phi))
