"""Quantum correlations of two-mode Gaussian states in a noisy thermal channel."""

from .channels import (
    BathParams,
    asymptotic_cm,
    evolve_closed_form,
    evolve_ode,
    validate_bath,
)
from .core import (
    GaussianState,
    SymplecticMatrix,
    apply_symplectic,
    block_decompose,
    displace,
    gaussian_fidelity,
    is_physical,
    phase_rotation,
    purity,
    symplectic_eigenvalues,
    symplectic_form,
    tensor,
    thermal_state,
    two_mode_rotation,
    two_mode_squeezer,
    vacuum,
)
from .protocol import ScenarioParams, build_input, run_point, sweep
from .quantifiers import (
    GeneratorParams,
    crb,
    entropy_h,
    eof_symmetric,
    gip,
    gip_oracle,
    invariants,
    log_negativity,
    nu_tilde_minus,
    qfi_phase,
)

__version__ = "0.1.0"

__all__ = [
    "BathParams",
    "GaussianState",
    "GeneratorParams",
    "ScenarioParams",
    "SymplecticMatrix",
    "apply_symplectic",
    "asymptotic_cm",
    "block_decompose",
    "build_input",
    "crb",
    "displace",
    "entropy_h",
    "eof_symmetric",
    "evolve_closed_form",
    "evolve_ode",
    "gaussian_fidelity",
    "gip",
    "gip_oracle",
    "invariants",
    "is_physical",
    "log_negativity",
    "nu_tilde_minus",
    "phase_rotation",
    "purity",
    "qfi_phase",
    "run_point",
    "sweep",
    "symplectic_eigenvalues",
    "symplectic_form",
    "tensor",
    "thermal_state",
    "two_mode_rotation",
    "two_mode_squeezer",
    "vacuum",
    "validate_bath",
]
