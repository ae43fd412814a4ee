"""Statevector simulation of standard and enhanced QAOA on diagonal Hamiltonians."""

__version__ = "0.1.0"

from .engine import (
    IterationRecord,
    RunConfig,
    Schedule,
    Trajectory,
    beta_default,
    gamma_schedule,
    iteration_count,
    run_enhanced,
    run_standard,
    update_parameters,
)
from .errors import (
    DegeneracyError,
    DimacsParseError,
    DomainError,
    EqaoaError,
    GenerationError,
    ShapeError,
    SizeError,
)
from .hamiltonian import (
    Clause3,
    DiagonalObjective,
    NormalizedDiagonal,
    ProjectorHamiltonian,
    SatInstance,
    WalshHamiltonian,
    build_sat_diagonal,
    eval_projector,
    grover_diagonal,
    layer,
    normalize,
    normalize_l1,
    projector_coefficients,
    projector_to_walsh,
    walsh_coefficients,
)
from .problems import (
    GeneratorSpec,
    Graph,
    emit_dimacs,
    generate_planted_sat,
    generate_random_unsat,
    mis_diagonal,
    parse_dimacs,
)
from .statevector import (
    StateVector,
    apply_diagonal_phase,
    apply_hadamard_all,
    apply_mixer,
    expectation,
    init_uniform,
    probability_mass,
)
