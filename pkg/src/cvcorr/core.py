"""Phase-space representation of Gaussian states and symplectic algebra.

Conventions: quadratures are ordered (Q1, P1, Q2, P2, ...) and scaled so that
the vacuum covariance matrix is the identity (hbar = 2). A state is physical
when every symplectic eigenvalue is at least 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidArgumentError

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
EIGEN_TOL = 1e-9

_OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _frozen(a) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def _symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise InvalidArgumentError(f"{name} must be finite, got {value}")
    return value


def symplectic_form(m: int) -> np.ndarray:
    """Block-diagonal symplectic form for ``m`` modes."""
    if int(m) != m or m < 1:
        raise InvalidArgumentError(f"mode count must be a positive integer, got {m}")
    return np.kron(np.eye(int(m)), _OMEGA_1)


@dataclass(frozen=True)
class GaussianState:
    """First and second moments of an m-mode Gaussian state.

    ``sigma`` is symmetrized on construction; an input whose asymmetry exceeds
    ``SYMMETRY_TOL`` is rejected.
    """

    d: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        sigma = np.array(self.sigma, dtype=float)
        d = np.array(self.d, dtype=float).reshape(-1)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
            raise InvalidArgumentError(f"covariance must be 2m x 2m, got shape {sigma.shape}")
        if sigma.shape[0] == 0:
            raise InvalidArgumentError("a state needs at least one mode")
        if d.shape[0] != sigma.shape[0]:
            raise InvalidArgumentError(
                f"displacement length {d.shape[0]} does not match covariance size {sigma.shape[0]}"
            )
        if not (np.all(np.isfinite(sigma)) and np.all(np.isfinite(d))):
            raise InvalidArgumentError("state moments must be finite")
        if np.max(np.abs(sigma - sigma.T)) > SYMMETRY_TOL * max(1.0, np.max(np.abs(sigma))):
            raise InvalidArgumentError("covariance matrix is not symmetric")
        object.__setattr__(self, "sigma", _frozen(_symmetrize(sigma)))
        object.__setattr__(self, "d", _frozen(d))

    @property
    def modes(self) -> int:
        return self.sigma.shape[0] // 2

    @classmethod
    def from_sigma(cls, sigma) -> GaussianState:
        sigma = np.asarray(sigma, dtype=float)
        return cls(np.zeros(sigma.shape[0]), sigma)


@dataclass(frozen=True)
class SymplecticMatrix:
    """A real 2m x 2m matrix S with S Omega S^T = Omega.

    Matrices compose with ``@``; ``(S1 @ S2)`` acts as S2 first, then S1.
    """

    matrix: np.ndarray

    def __post_init__(self):
        s = np.array(self.matrix, dtype=float)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2 or s.shape[0] == 0:
            raise InvalidArgumentError(f"symplectic matrix must be 2m x 2m, got shape {s.shape}")
        omega = symplectic_form(s.shape[0] // 2)
        err = np.max(np.abs(s @ omega @ s.T - omega))
        if not err <= SYMPLECTIC_TOL:
            raise InvalidArgumentError(f"matrix is not symplectic (max deviation {err:.3e})")
        object.__setattr__(self, "matrix", _frozen(s))

    @property
    def modes(self) -> int:
        return self.matrix.shape[0] // 2

    def __matmul__(self, other: SymplecticMatrix) -> SymplecticMatrix:
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        if other.modes != self.modes:
            raise InvalidArgumentError("cannot compose symplectic matrices of different sizes")
        return SymplecticMatrix(self.matrix @ other.matrix)

    def inverse(self) -> SymplecticMatrix:
        # S^-1 = -Omega S^T Omega
        omega = symplectic_form(self.modes)
        return SymplecticMatrix(-omega @ self.matrix.T @ omega)

    @classmethod
    def identity(cls, m: int) -> SymplecticMatrix:
        return cls(np.eye(2 * m))


class BlockDecomposition(NamedTuple):
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def assemble(self) -> np.ndarray:
        return np.block([[self.alpha, self.gamma], [self.gamma.T, self.beta]])


def vacuum(m: int = 1) -> GaussianState:
    symplectic_form(m)
    return GaussianState(np.zeros(2 * m), np.eye(2 * m))


def thermal_state(nbar: float) -> GaussianState:
    """Single-mode thermal state with mean photon number ``nbar``."""
    nbar = _check_finite("nbar", nbar)
    if nbar < 0:
        raise InvalidArgumentError(f"nbar must be >= 0, got {nbar}")
    return GaussianState(np.zeros(2), (2 * nbar + 1) * np.eye(2))


def two_mode_squeezer(r: float) -> SymplecticMatrix:
    r = _check_finite("r", r)
    c, s = np.cosh(r), np.sinh(r)
    z = np.diag([1.0, -1.0])
    eye = np.eye(2)
    return SymplecticMatrix(np.block([[c * eye, s * z], [s * z, c * eye]]))


def two_mode_rotation(theta: float) -> SymplecticMatrix:
    """Beam splitter of transmissivity cos(theta)**2."""
    theta = _check_finite("theta", theta)
    c, s = np.cos(theta), np.sin(theta)
    eye = np.eye(2)
    return SymplecticMatrix(np.block([[c * eye, s * eye], [-s * eye, c * eye]]))


def _embed(block: np.ndarray, target: int, m: int) -> np.ndarray:
    if int(target) != target or not 0 <= target < m:
        raise InvalidArgumentError(f"target mode {target} out of range for {m} modes")
    out = np.eye(2 * m)
    out[2 * target : 2 * target + 2, 2 * target : 2 * target + 2] = block
    return out


def phase_rotation(phi: float, target: int = 0, m: int = 2) -> SymplecticMatrix:
    """Rotation generated by the photon number of mode ``target``."""
    phi = _check_finite("phi", phi)
    symplectic_form(m)
    c, s = np.cos(phi), np.sin(phi)
    return SymplecticMatrix(_embed(np.array([[c, s], [-s, c]]), target, m))


def single_mode_squeezer(xi: float, target: int = 0, m: int = 1) -> SymplecticMatrix:
    """Squeezes Q by e^-xi and stretches P by e^xi on mode ``target``."""
    xi = _check_finite("xi", xi)
    symplectic_form(m)
    return SymplecticMatrix(_embed(np.diag([np.exp(-xi), np.exp(xi)]), target, m))


def direct_sum(*blocks: SymplecticMatrix) -> SymplecticMatrix:
    size = sum(b.matrix.shape[0] for b in blocks)
    out = np.zeros((size, size))
    k = 0
    for b in blocks:
        n = b.matrix.shape[0]
        out[k : k + n, k : k + n] = b.matrix
        k += n
    return SymplecticMatrix(out)


def tensor(a: GaussianState, b: GaussianState) -> GaussianState:
    n, k = a.sigma.shape[0], b.sigma.shape[0]
    sigma = np.zeros((n + k, n + k))
    sigma[:n, :n] = a.sigma
    sigma[n:, n:] = b.sigma
    return GaussianState(np.concatenate([a.d, b.d]), sigma)


def apply_symplectic(state: GaussianState, s: SymplecticMatrix) -> GaussianState:
    if s.modes != state.modes:
        raise InvalidArgumentError(
            f"symplectic acts on {s.modes} modes but the state has {state.modes}"
        )
    m = s.matrix
    return GaussianState(m @ state.d, _symmetrize(m @ state.sigma @ m.T))


def displace(state: GaussianState, delta) -> GaussianState:
    delta = np.asarray(delta, dtype=float).reshape(-1)
    if delta.shape != state.d.shape:
        raise InvalidArgumentError(
            f"displacement must have length {state.d.shape[0]}, got {delta.shape[0]}"
        )
    return GaussianState(state.d + delta, state.sigma)


def _as_sigma(sigma) -> np.ndarray:
    if isinstance(sigma, GaussianState):
        return sigma.sigma
    return np.asarray(sigma, dtype=float)


def block_decompose(sigma) -> BlockDecomposition:
    sigma = _as_sigma(sigma)
    if sigma.shape != (4, 4):
        raise InvalidArgumentError(f"expected a 4x4 covariance matrix, got shape {sigma.shape}")
    return BlockDecomposition(
        sigma[:2, :2].copy(), sigma[2:, 2:].copy(), sigma[:2, 2:].copy()
    )


def _is_positive_definite(sigma: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        return False
    return True


def symplectic_eigenvalues(sigma) -> np.ndarray:
    """Symplectic spectrum of a positive-definite covariance, ascending."""
    sigma = _symmetrize(_as_sigma(sigma))
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise InvalidArgumentError(f"covariance must be 2m x 2m, got shape {sigma.shape}")
    if not _is_positive_definite(sigma):
        raise InvalidArgumentError("covariance matrix is not positive definite")
    m = sigma.shape[0] // 2
    # eigenvalues of i*Omega*sigma come in +-nu pairs
    ev = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(m) @ sigma)))
    return 0.5 * (ev[0::2] + ev[1::2])


def is_physical(sigma, tol: float = EIGEN_TOL) -> bool:
    sigma = _as_sigma(sigma)
    try:
        nu = symplectic_eigenvalues(sigma)
    except InvalidArgumentError:
        return False
    return bool(nu[0] >= 1 - tol)


def purity(sigma) -> float:
    det = np.linalg.det(_as_sigma(sigma))
    if not det > 0:
        raise InvalidArgumentError(f"covariance determinant must be positive, got {det}")
    return float(1 / np.sqrt(det))


def _is_pure(sigma: np.ndarray) -> bool:
    return bool(np.all(np.abs(symplectic_eigenvalues(sigma) - 1) <= EIGEN_TOL))


def gaussian_fidelity(a: GaussianState, b: GaussianState) -> float:
    """Uhlmann fidelity (squared-overlap form) between one- or two-mode states.

    Uses the Marian-Marian closed forms. When either state is pure the
    fidelity reduces to the overlap Tr(rho_a rho_b), which is evaluated
    directly because the general expressions lose half their digits there.
    """
    if a.modes != b.modes:
        raise InvalidArgumentError("fidelity needs states with equal mode counts")
    if a.modes > 2:
        raise InvalidArgumentError("fidelity is implemented for one- and two-mode states only")
    for name, s in (("first", a), ("second", b)):
        if not is_physical(s.sigma):
            raise InvalidArgumentError(f"{name} state is not physical")

    total = a.sigma + b.sigma
    delta = a.d - b.d
    gauss = np.exp(-0.5 * delta @ np.linalg.solve(total, delta))

    if _is_pure(a.sigma) or _is_pure(b.sigma):
        f = 1 / np.sqrt(np.linalg.det(0.5 * total))
    elif a.modes == 1:
        big = np.linalg.det(total) / 4
        small = (np.linalg.det(a.sigma) - 1) * (np.linalg.det(b.sigma) - 1) / 4
        f = 1 / (np.sqrt(big + small) - np.sqrt(small))
    else:
        omega = symplectic_form(2)
        big = np.linalg.det(total) / 16
        g = np.linalg.det(omega @ a.sigma @ omega @ b.sigma - np.eye(4)) / 16
        # det(sigma + i Omega) = prod(nu_k^2 - 1), exact and non-negative
        lam = np.prod(symplectic_eigenvalues(a.sigma) ** 2 - 1) * np.prod(
            symplectic_eigenvalues(b.sigma) ** 2 - 1
        ) / 16
        s = np.sqrt(max(g, 0.0)) + np.sqrt(max(lam, 0.0))
        # rationalized form of 1 / (s - sqrt(s^2 - big))
        f = (s + np.sqrt(max(s * s - big, 0.0))) / big
    return float(min(max(f * gauss, 0.0), 1.0))
