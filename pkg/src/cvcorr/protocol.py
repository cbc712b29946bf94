"""Probe preparation, black-box phase, noisy evolution and parameter sweeps."""

from __future__ import annotations

import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .channels import BathParams, evolve_closed_form, validate_bath
from .core import (
    GaussianState,
    apply_symplectic,
    displace,
    is_physical,
    phase_rotation,
    symplectic_eigenvalues,
    tensor,
    thermal_state,
    two_mode_rotation,
    two_mode_squeezer,
)
from .errors import (
    CVCorrError,
    InvalidArgumentError,
    NotApplicableError,
    PhysicalityError,
)
from .quantifiers import eof_symmetric, gip_with_flag, log_negativity, nu_tilde_minus

AXES = ("theta", "r", "t")

DEFAULT_BATH = BathParams.uniform(2, N=0.5, gamma=1.0)
FIGURE_TIMES = (0.1, 0.5, 1.0, 2.0)
FIGURE4_SQUEEZINGS = (0.3, 0.8, 1.2)


@dataclass(frozen=True)
class ScenarioParams:
    r: float = 0.0
    theta: float = 0.0
    t: float = 0.0
    phi: float = 0.0
    nbar_in: tuple[float, float] = (0.0, 0.0)
    alpha: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    bath: BathParams = field(default=DEFAULT_BATH)

    def __post_init__(self):
        object.__setattr__(self, "nbar_in", tuple(float(x) for x in self.nbar_in))
        object.__setattr__(self, "alpha", tuple(float(x) for x in self.alpha))
        for name in ("r", "theta", "t", "phi"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidArgumentError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if len(self.nbar_in) != 2 or len(self.alpha) != 4:
            raise InvalidArgumentError("nbar_in needs 2 values and alpha needs 4")
        if not all(np.isfinite(self.alpha)):
            raise InvalidArgumentError("alpha must be finite")
        if self.t < 0:
            raise InvalidArgumentError(f"t must be >= 0, got {self.t}")
        if self.bath.n_modes != 2:
            raise InvalidArgumentError("the protocol uses a two-mode bath")
        validate_bath(self.bath)

    def with_axis(self, axis: str, value: float) -> ScenarioParams:
        if axis not in AXES:
            raise InvalidArgumentError(f"unknown sweep axis {axis!r}; expected one of {AXES}")
        return dataclasses.replace(self, **{axis: value})


@dataclass(frozen=True)
class PointRecord:
    params: ScenarioParams
    sigma_out: np.ndarray
    gip_value: float
    eof_value: float | None  # None: state not symmetric, closed form not applicable
    logneg_value: float
    nu_minus: float
    physical: bool
    regularized: bool


@dataclass(frozen=True)
class SweepTable:
    axis: str
    rows: list[tuple[float, PointRecord]]

    def column(self, name: str) -> np.ndarray:
        values = [getattr(rec, name) for _, rec in self.rows]
        return np.array([np.nan if v is None else v for v in values], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.rows])


def build_input(p: ScenarioParams) -> GaussianState:
    """Squeezed, beam-split, displaced product of thermal states."""
    state = tensor(thermal_state(p.nbar_in[0]), thermal_state(p.nbar_in[1]))
    state = apply_symplectic(state, two_mode_squeezer(p.r))
    state = apply_symplectic(state, two_mode_rotation(p.theta))
    return displace(state, p.alpha)


def output_state(p: ScenarioParams) -> GaussianState:
    state = apply_symplectic(build_input(p), phase_rotation(p.phi, 0, 2))
    return evolve_closed_form(state, p.bath, p.t)


def run_point(p: ScenarioParams) -> PointRecord:
    out = output_state(p)
    sigma = out.sigma
    if not is_physical(sigma):
        nu = symplectic_eigenvalues(sigma)[0]
        raise PhysicalityError(f"output state is unphysical (smallest symplectic eigenvalue {nu:.6g})")
    gip_value, regularized = gip_with_flag(sigma)
    try:
        eof = eof_symmetric(sigma)
    except NotApplicableError:
        eof = None
    return PointRecord(
        params=p,
        sigma_out=sigma,
        gip_value=gip_value,
        eof_value=eof,
        logneg_value=log_negativity(sigma),
        nu_minus=nu_tilde_minus(sigma),
        physical=True,
        regularized=regularized,
    )


def sweep(base: ScenarioParams, axis: str, grid: Sequence[float]) -> SweepTable:
    grid = [float(x) for x in grid]
    if not grid:
        raise InvalidArgumentError("sweep grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidArgumentError("sweep grid must be strictly increasing")
    rows = []
    for value in grid:
        try:
            rows.append((value, run_point(base.with_axis(axis, value))))
        except CVCorrError as exc:
            raise type(exc)(f"{axis}={value!r}: {exc}") from exc
    return SweepTable(axis, rows)


def make_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Points start + k*step up to and including ``stop`` (within 1e-9 steps)."""
    if not step > 0:
        raise InvalidArgumentError(f"grid step must be positive, got {step}")
    if not start < stop:
        raise InvalidArgumentError(f"grid needs min < max, got {start} >= {stop}")
    n = int(np.floor((stop - start) / step + 1e-9))
    return start + step * np.arange(n + 1)


@dataclass(frozen=True)
class Curve:
    """One curve of a figure: a base scenario swept along one axis."""

    name: str
    base: ScenarioParams
    axis: str
    grid: np.ndarray


def _tag(value: float) -> str:
    return f"{value:g}"


def figure_curves(which: int) -> list[Curve]:
    """Default parameter sets for the three published figure families."""
    if which == 2:
        grid = np.linspace(0.0, np.pi, 201)
        curves = []
        for panel, r in (("a", 0.3), ("b", 1.2)):
            for t in FIGURE_TIMES:
                curves.append(
                    Curve(f"fig2_{panel}_r{_tag(r)}_t{_tag(t)}", ScenarioParams(r=r, t=t), "theta", grid)
                )
        return curves
    if which == 3:
        grid = make_grid(0.0, 2.0, 0.01)
        return [
            Curve(f"fig3_ab_theta1.5708_t{_tag(t)}", ScenarioParams(theta=np.pi / 2, t=t), "r", grid)
            for t in FIGURE_TIMES
        ]
    if which == 4:
        grid = make_grid(0.0, 3.0, 0.01)
        return [
            Curve(f"fig4_ab_theta1.5708_r{_tag(r)}", ScenarioParams(r=r, theta=np.pi / 2), "t", grid)
            for r in FIGURE4_SQUEEZINGS
        ]
    raise InvalidArgumentError(f"no figure recipe {which}; choose 2, 3 or 4")
