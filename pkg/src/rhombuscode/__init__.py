"""Stabilizer-code toolkit for a rhombus-tile surface-code family.

Exact Pauli/GF(2) arithmetic, lattice construction for the grid and
L-shaped code family, code verification (rank, logicals, distance by two
independent methods), and logical-qubit observables under global/local
Gaussian dephasing with an analytic engine and a Monte Carlo oracle.
"""

__version__ = "0.1.0"

from .dephasing import (
    NoiseModel,
    ObservableRecord,
    bloch_and_leakage,
    closed_form,
    code_space_operator,
    decoherence_factor,
    dephased_pauli_expectation,
    monte_carlo_grid,
    monte_carlo_oracle,
    prepare_logical_state,
)
from .engine import (
    LogicalSet,
    VerificationReport,
    codeword_zero,
    distance_kl_oracle,
    distance_symplectic,
    find_logical_set,
    logical_basis_state,
    stabilizer_rank,
    verify_code,
    verify_logical_set,
)
from .lattice import (
    CodeSpec,
    FamilyParameters,
    LatticeLayout,
    build_named,
    build_unit,
    code_from_json,
    code_to_json,
    family_parameters,
    layout_coordinates,
    stack_grid,
    stack_l_shape,
)
from .pauli import (
    PauliOperator,
    apply,
    commutes,
    multiply,
    parse_pauli,
    to_string,
    weight,
)
from .states import PureState

__all__ = [
    "__version__",
    "CodeSpec",
    "FamilyParameters",
    "LatticeLayout",
    "LogicalSet",
    "NoiseModel",
    "ObservableRecord",
    "PauliOperator",
    "PureState",
    "VerificationReport",
    "apply",
    "bloch_and_leakage",
    "build_named",
    "build_unit",
    "closed_form",
    "code_from_json",
    "code_space_operator",
    "code_to_json",
    "codeword_zero",
    "commutes",
    "decoherence_factor",
    "dephased_pauli_expectation",
    "distance_kl_oracle",
    "distance_symplectic",
    "family_parameters",
    "find_logical_set",
    "layout_coordinates",
    "logical_basis_state",
    "monte_carlo_grid",
    "monte_carlo_oracle",
    "multiply",
    "parse_pauli",
    "prepare_logical_state",
    "stabilizer_rank",
    "stack_grid",
    "stack_l_shape",
    "to_string",
    "verify_code",
    "verify_logical_set",
    "weight",
]
