"""Markovian Gaussian bath acting independently on each mode.

The second moments relax as ``d sigma/dt = -gamma (sigma - sigma_inf)``; the
first moments decay at half that rate.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .core import GaussianState, is_physical
from .errors import InvalidArgumentError, PhysicalityError


@dataclass(frozen=True)
class BathParams:
    """Damping rate plus per-mode thermal occupation ``N`` and squeezing ``M``."""

    gamma: float
    N: tuple[float, ...]
    M: tuple[complex, ...] = field(default=())

    def __post_init__(self):
        n = tuple(float(x) for x in np.atleast_1d(self.N))
        m = tuple(complex(x) for x in np.atleast_1d(self.M))
        if not m:
            m = (0j,) * len(n)
        if len(n) == 0:
            raise InvalidArgumentError("bath needs at least one mode")
        if len(m) != len(n):
            raise InvalidArgumentError(f"got {len(n)} values of N but {len(m)} values of M")
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "M", m)

    @property
    def n_modes(self) -> int:
        return len(self.N)

    @classmethod
    def uniform(cls, n_modes: int = 2, N: float = 0.5, M: complex = 0.0, gamma: float = 1.0) -> BathParams:
        return cls(gamma, (N,) * n_modes, (M,) * n_modes)


def validate_bath(b: BathParams) -> None:
    """Raise unless the bath satisfies gamma > 0, N >= 0 and |M|^2 <= N(N+1)."""
    if not (np.isfinite(b.gamma) and b.gamma > 0):
        raise PhysicalityError(f"damping rate must be positive, got {b.gamma}")
    for k, (n, m) in enumerate(zip(b.N, b.M)):
        if not (np.isfinite(n) and np.isfinite(m.real) and np.isfinite(m.imag)):
            raise PhysicalityError(f"mode {k}: bath parameters must be finite")
        if n < 0:
            raise PhysicalityError(f"mode {k}: thermal occupation N={n} is negative")
        if abs(m) ** 2 > n * (n + 1):
            raise PhysicalityError(
                f"mode {k}: |M|^2 = {abs(m) ** 2:.6g} exceeds N(N+1) = {n * (n + 1):.6g}"
            )


def asymptotic_cm(b: BathParams) -> np.ndarray:
    """Fixed-point covariance of the bath (block diagonal, one block per mode)."""
    validate_bath(b)
    out = np.zeros((2 * b.n_modes, 2 * b.n_modes))
    for k, (n, m) in enumerate(zip(b.N, b.M)):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = (2 * n + 1) * np.eye(2) + 2 * np.array(
            [[m.real, m.imag], [m.imag, -m.real]]
        )
    return out


def _check_inputs(state: GaussianState, b: BathParams, t: float) -> None:
    if b.n_modes != state.modes:
        raise InvalidArgumentError(f"bath has {b.n_modes} modes but the state has {state.modes}")
    if not (np.isfinite(t) and t >= 0):
        raise InvalidArgumentError(f"interaction time must be finite and >= 0, got {t}")
    validate_bath(b)
    if not is_physical(state.sigma):
        raise PhysicalityError("input state is not physical")


def _coupling(b: BathParams, modes: Sequence[int] | None) -> np.ndarray:
    """Per-quadrature 0/1 mask of the modes that feel the bath."""
    mask = np.ones(2 * b.n_modes)
    if modes is not None:
        mask[:] = 0
        for k in modes:
            if not 0 <= k < b.n_modes:
                raise InvalidArgumentError(f"mode index {k} out of range")
            mask[2 * k : 2 * k + 2] = 1
    return mask


def evolve_closed_form(
    state: GaussianState, b: BathParams, t: float, modes: Sequence[int] | None = None
) -> GaussianState:
    """Exact solution of the moment equations after time ``t``.

    ``modes`` restricts the bath to a subset of the modes (default: all). With
    every mode coupled this is ``exp(-gamma t) sigma + (1 - exp(-gamma t)) sigma_inf``.
    """
    _check_inputs(state, b, t)
    mask = _coupling(b, modes)
    x = np.exp(-0.5 * b.gamma * t * mask)
    sigma_inf = asymptotic_cm(b)
    noise = (1 - np.outer(x, x)) * sigma_inf * np.outer(mask, mask)
    sigma = x[:, None] * state.sigma * x[None, :] + noise
    return GaussianState(x * state.d, 0.5 * (sigma + sigma.T))


def evolve_ode(
    state: GaussianState, b: BathParams, t: float, dt: float | None = None
) -> GaussianState:
    """Fixed-step RK4 integration of the moment equations from 0 to ``t``.

    Kept independent of :func:`evolve_closed_form` so it can serve as its
    oracle. The default step is ``1e-3 / gamma``; the last step is shortened
    to land exactly on ``t``.
    """
    _check_inputs(state, b, t)
    if dt is None:
        dt = 1e-3 / b.gamma
    if not (np.isfinite(dt) and dt > 0):
        raise InvalidArgumentError(f"step dt must be positive, got {dt}")
    sigma_inf = asymptotic_cm(b)
    g = b.gamma

    def rhs(sigma, d):
        return -g * (sigma - sigma_inf), -0.5 * g * d

    def step(sigma, d, h):
        k1s, k1d = rhs(sigma, d)
        k2s, k2d = rhs(sigma + 0.5 * h * k1s, d + 0.5 * h * k1d)
        k3s, k3d = rhs(sigma + 0.5 * h * k2s, d + 0.5 * h * k2d)
        k4s, k4d = rhs(sigma + h * k3s, d + h * k3d)
        return (
            sigma + h / 6 * (k1s + 2 * k2s + 2 * k3s + k4s),
            d + h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d),
        )

    sigma, d = state.sigma.copy(), state.d.copy()
    n_full = int(np.floor(t / dt + 1e-9))
    for _ in range(n_full):
        sigma, d = step(sigma, d, dt)
    rest = t - n_full * dt
    if rest > 1e-12 * max(t, 1.0):
        sigma, d = step(sigma, d, rest)
    return GaussianState(d, 0.5 * (sigma + sigma.T))
