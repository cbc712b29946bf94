import numpy as np
import pytest

from cvcorr.channels import BathParams, evolve_closed_form
from cvcorr.core import apply_symplectic, two_mode_rotation, two_mode_squeezer, vacuum

_CRITERIA: list[tuple[str, bool, str]] = []


def tmsv(r):
    """Two-mode squeezed vacuum state."""
    return apply_symplectic(vacuum(2), two_mode_squeezer(r))


def evolved(r, theta=0.0, t=0.5, n=0.5, gamma=1.0):
    state = apply_symplectic(tmsv(r), two_mode_rotation(theta))
    return evolve_closed_form(state, BathParams.uniform(2, N=n, gamma=gamma), t)


def random_evolved_states(count, seed=1234):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        out.append(
            evolved(rng.uniform(0.05, 1.5), rng.uniform(0, np.pi), rng.uniform(0.02, 3.0), rng.uniform(0, 1.5))
        )
    return out


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
