"""Correlation and metrology quantifiers for two-mode Gaussian states.

Every quantifier reads the covariance matrix only, so displacements and
local phase rotations leave them unchanged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    GaussianState,
    SymplecticMatrix,
    _as_sigma,
    apply_symplectic,
    gaussian_fidelity,
    is_physical,
    phase_rotation,
    single_mode_squeezer,
)
from .errors import (
    InvalidArgumentError,
    NotApplicableError,
    NumericalError,
    PhysicalityError,
)

log = logging.getLogger(__name__)

DEFAULT_REGULARIZATION = 1e-6
DEFAULT_D_EPS = 1e-3


def _clamp(x: float) -> float:
    """max(0, x) that never returns -0.0."""
    return float(x) if x > 0 else 0.0


def _det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _two_mode(sigma) -> np.ndarray:
    sigma = _as_sigma(sigma)
    if sigma.shape != (4, 4):
        raise InvalidArgumentError(f"expected a 4x4 covariance matrix, got shape {sigma.shape}")
    return sigma


class SymplecticInvariants(NamedTuple):
    A: float
    B: float
    C: float
    D: float


def invariants(sigma) -> SymplecticInvariants:
    """Determinants of the local blocks, the cross block and the whole matrix."""
    sigma = _two_mode(sigma)
    alpha, beta, gamma = sigma[:2, :2], sigma[2:, 2:], sigma[:2, 2:]
    a = _det2(alpha)
    # Schur complement keeps D == A*B bit-for-bit when gamma vanishes
    alpha_inv = np.array([[alpha[1, 1], -alpha[0, 1]], [-alpha[1, 0], alpha[0, 0]]]) / a
    d = a * _det2(beta - gamma.T @ alpha_inv @ gamma)
    return SymplecticInvariants(a, _det2(beta), _det2(gamma), d)


def _require_physical(sigma: np.ndarray) -> None:
    if not is_physical(sigma):
        raise PhysicalityError("covariance matrix violates the uncertainty relation")


def _gip_closed_form(inv: SymplecticInvariants) -> float:
    A, B, C, D = inv
    X = (A + C) * (1 + B + C - D) - D**2
    Y = (D - 1) * (1 + A + B + 2 * C + D)
    Z = (A + D) * (A * B - D) + C * (2 * A + C) * (1 + B)
    root = np.sqrt(max(X * X + Y * Z, 0.0))
    if X > 0:
        value = (X + root) / (2 * Y)
    else:
        # same quantity without the X + root cancellation; exact 0 when Z == 0
        denom = 2 * (root - X)
        value = Z / denom if denom > 0 else 0.0
    return _clamp(value)


def _is_degenerate(inv: SymplecticInvariants) -> bool:
    A, B, C, D = inv
    Y = (D - 1) * (1 + A + B + 2 * C + D)
    return abs(Y) < 1e-9 * (1 + A + B + D) ** 2


def _regularize(sigma: np.ndarray, eps: float) -> np.ndarray:
    # brief flow through the default bath (N = 0.5, gamma = 1): sigma_inf = 2 I
    return np.exp(-eps) * sigma + (1 - np.exp(-eps)) * 2 * np.eye(4)


def gip_with_flag(sigma, regularization: float = DEFAULT_REGULARIZATION) -> tuple[float, bool]:
    """Gaussian interferometric power and whether regularization was needed.

    Near-pure states make the closed form 0/0; those are first sent through
    the default bath for a time ``regularization`` before evaluation.
    """
    sigma = _two_mode(sigma)
    _require_physical(sigma)
    if not regularization >= 0:
        raise InvalidArgumentError(f"regularization must be >= 0, got {regularization}")
    inv = invariants(sigma)
    if not _is_degenerate(inv):
        return _gip_closed_form(inv), False
    if regularization == 0:
        raise NumericalError("closed form is 0/0 for this (near-pure) state")
    return _gip_closed_form(invariants(_regularize(sigma, regularization))), True


def gip(sigma, regularization: float = DEFAULT_REGULARIZATION) -> float:
    return gip_with_flag(sigma, regularization)[0]


@dataclass(frozen=True)
class GeneratorParams:
    """Local frame of the mode-A generator: squeeze by ``xi`` then rotate by ``chi``.

    The generator is L n_A L^-1 with L = R(chi) S(xi), so its spectrum stays
    harmonic.
    """

    xi: float = 0.0
    chi: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.xi) and self.xi >= 0):
            raise InvalidArgumentError(f"xi must be finite and >= 0, got {self.xi}")
        if not (np.isfinite(self.chi) and 0 <= self.chi < np.pi):
            raise InvalidArgumentError(f"chi must lie in [0, pi), got {self.chi}")

    def frame(self, m: int = 2) -> SymplecticMatrix:
        return phase_rotation(self.chi, 0, m) @ single_mode_squeezer(self.xi, 0, m)


def _as_state(state) -> GaussianState:
    if isinstance(state, GaussianState):
        return state
    return GaussianState.from_sigma(state)


def qfi_phase(
    state, g: GeneratorParams = GeneratorParams(), d_eps: float = DEFAULT_D_EPS
) -> float:
    """Quantum Fisher information of a phase imprinted on mode A.

    Central second difference of the fidelity between the state and its
    images under exp(+-i d_eps H_A).
    """
    state = _as_state(state)
    if state.modes != 2:
        raise InvalidArgumentError("qfi_phase expects a two-mode state")
    _require_physical(state.sigma)
    if not 1e-4 <= d_eps <= 1e-2:
        raise InvalidArgumentError(f"d_eps must lie in [1e-4, 1e-2], got {d_eps}")
    frame = g.frame(2)
    frame_inv = frame.inverse()

    def fid(eps: float) -> float:
        u = frame @ phase_rotation(eps, 0, 2) @ frame_inv
        return gaussian_fidelity(state, apply_symplectic(state, u))

    value = -2 * (fid(d_eps) - 2 + fid(-d_eps)) / d_eps**2
    return _clamp(value)


@dataclass(frozen=True)
class OracleGrid:
    """Coarse grid over (xi, chi) followed by zoomed refinement passes."""

    xi_max: float = 2.0
    xi_step: float = 0.1
    chi_step: float = np.pi / 36
    refinements: int = 2
    zoom: int = 10
    d_eps: float = DEFAULT_D_EPS


def gip_oracle(state, grid: OracleGrid = OracleGrid()) -> float:
    """Brute-force GIP: a quarter of the smallest QFI over harmonic local generators.

    Ties resolve to the smallest xi, then the smallest chi, so the result does
    not depend on evaluation order.
    """
    state = _as_state(state)
    if state.modes != 2:
        raise InvalidArgumentError("gip_oracle expects a two-mode state")
    _require_physical(state.sigma)

    cache: dict[tuple[float, float], float] = {}

    def cost(xi: float, chi: float) -> float:
        xi = min(max(xi, 0.0), grid.xi_max)
        chi = float(np.mod(chi, np.pi))
        if chi >= np.pi:
            chi = 0.0
        key = (round(xi, 14), round(chi, 14))
        if key not in cache:
            cache[key] = qfi_phase(state, GeneratorParams(xi, chi), grid.d_eps) / 4
        return cache[key]

    def search(xis, chis, incumbent):
        best_val, best_xi, best_chi = incumbent
        for xi in sorted(xis):
            for chi in sorted(chis):
                v = cost(xi, chi)
                if v < best_val or (
                    v == best_val and (xi, chi) < (best_xi, best_chi)
                ):
                    best_val, best_xi, best_chi = v, xi, chi
        return best_val, best_xi, best_chi

    n_xi = int(round(grid.xi_max / grid.xi_step))
    xis = [i * grid.xi_step for i in range(n_xi + 1)]
    chis = [j * grid.chi_step for j in range(int(np.ceil(np.pi / grid.chi_step - 1e-9)))]
    best = search(xis, chis, (np.inf, np.inf, np.inf))

    xi_step, chi_step = grid.xi_step, grid.chi_step
    for _ in range(grid.refinements):
        _, xi0, chi0 = best
        fine_xi, fine_chi = xi_step / grid.zoom, chi_step / grid.zoom
        offsets = range(-grid.zoom, grid.zoom + 1)
        cand_xi = {min(max(xi0 + k * fine_xi, 0.0), grid.xi_max) for k in offsets}
        cand_chi = {float(np.mod(chi0 + k * fine_chi, np.pi)) % np.pi for k in offsets}
        best = search(cand_xi, cand_chi, best)
        xi_step, chi_step = fine_xi, fine_chi

    if best[1] >= grid.xi_max - 1e-12:
        log.warning("oracle minimum sits on the xi cap %.3g; the true infimum may be lower", grid.xi_max)
    return _clamp(best[0])


def crb(qfi: float, n_measurements: int = 1) -> float:
    """Cramer-Rao lower bound on the estimator variance."""
    if not (np.isfinite(qfi) and qfi > 0):
        raise InvalidArgumentError(f"qfi must be positive, got {qfi}")
    if int(n_measurements) != n_measurements or n_measurements < 1:
        raise InvalidArgumentError(f"n_measurements must be a positive integer, got {n_measurements}")
    return 1.0 / (n_measurements * qfi)


def nu_tilde_minus(sigma) -> float:
    """Smallest symplectic eigenvalue of the partially transposed state."""
    A, B, C, D = invariants(sigma)
    delta = A + B - 2 * C
    disc = delta**2 - 4 * D
    if disc < -1e-10 * max(1.0, delta**2):
        raise NumericalError(f"negative discriminant {disc:.3e} in partial-transpose spectrum")
    disc = max(disc, 0.0)
    # 2 nu^2 = delta - sqrt(disc), rationalized against cancellation
    return float(np.sqrt(2 * D / (delta + np.sqrt(disc))))


def _xlog2x(x: float) -> float:
    return 0.0 if x == 0 else x * np.log2(x)


def entropy_h(x: float) -> float:
    if not (np.isfinite(x) and x > 0):
        raise InvalidArgumentError(f"h(x) needs x > 0, got {x}")
    plus = (1 + x) ** 2 / (4 * x)
    minus = (1 - x) ** 2 / (4 * x)
    return float(_xlog2x(plus) - _xlog2x(minus))


def eof_symmetric(sigma, symmetry_tol: float = 1e-8) -> float:
    """Entanglement of formation of a symmetric two-mode Gaussian state (ebits)."""
    inv = invariants(sigma)
    if abs(inv.A - inv.B) > symmetry_tol * max(inv.A, inv.B):
        raise NotApplicableError(
            f"state is not symmetric (det alpha = {inv.A:.12g}, det beta = {inv.B:.12g})"
        )
    nu = nu_tilde_minus(sigma)
    return entropy_h(nu) if nu < 1 else 0.0


def log_negativity(sigma) -> float:
    return _clamp(-np.log2(nu_tilde_minus(sigma)))


def partial_transpose(sigma) -> np.ndarray:
    """Flip the sign of mode B's momentum."""
    p = np.diag([1.0, 1.0, 1.0, -1.0])
    return p @ _two_mode(sigma) @ p

