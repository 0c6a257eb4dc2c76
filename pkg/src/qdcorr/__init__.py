"""Quantum correlations of two quantum dots coupled to a Majorana pair.

A few-mode fermionic simulator: it builds the dot-Majorana Hamiltonian
(plus regular-fermion controls), evolves states closed or with
lead-induced dissipation, and tracks entanglement (concurrence), quantum
discord, and an occupation-probability readout protocol for the reduced
two-dot state.
"""

from ._backend import NAME as BACKEND
from .correlations import (
    DiscordResult,
    MeasurementAngles,
    concurrence,
    conditional_entropy_after_measurement,
    mutual_information,
    quantum_discord,
    von_neumann_entropy,
)
from .dynamics import (
    IntegrationError,
    TimeGrid,
    Trajectory,
    analytic_odd_parity_coefficients,
    evolve_closed,
    evolve_lindblad,
)
from .fock import (
    DensityMatrix,
    ModeRegister,
    StateVector,
    annihilation_operator,
    basis_ket,
    creation_operator,
    majorana_pair,
    number_operator,
    parity_operator,
    partial_trace,
    pure_state_density,
)
from .models import (
    FERMION_PAIR_REGISTER,
    QD_MF_REGISTER,
    SINGLE_FERMION_REGISTER,
    TOMOGRAPHY_REGISTER,
    FermionModelParams,
    OpenSystemParams,
    QdMfParams,
    build_fermion_pair_hamiltonian,
    build_qd_mf_hamiltonian,
    build_single_fermion_hamiltonian,
    build_tomography_hamiltonian,
    lindblad_jump_operators,
)
from .tomography import (
    PolarDecomposition,
    ReconstructionError,
    ReconstructionResult,
    TomographyRecord,
    closed_form_probabilities,
    phase_aligned_fidelity,
    polar_decompose,
    reconstruct_density_matrix,
    simulate_protocol,
    state_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # fock
    "ModeRegister",
    "StateVector",
    "DensityMatrix",
    "annihilation_operator",
    "creation_operator",
    "number_operator",
    "parity_operator",
    "majorana_pair",
    "basis_ket",
    "pure_state_density",
    "partial_trace",
    # models
    "QdMfParams",
    "FermionModelParams",
    "OpenSystemParams",
    "QD_MF_REGISTER",
    "SINGLE_FERMION_REGISTER",
    "FERMION_PAIR_REGISTER",
    "TOMOGRAPHY_REGISTER",
    "build_qd_mf_hamiltonian",
    "build_single_fermion_hamiltonian",
    "build_fermion_pair_hamiltonian",
    "build_tomography_hamiltonian",
    "lindblad_jump_operators",
    # dynamics
    "TimeGrid",
    "Trajectory",
    "IntegrationError",
    "analytic_odd_parity_coefficients",
    "evolve_closed",
    "evolve_lindblad",
    # correlations
    "MeasurementAngles",
    "DiscordResult",
    "von_neumann_entropy",
    "mutual_information",
    "concurrence",
    "conditional_entropy_after_measurement",
    "quantum_discord",
    # tomography
    "PolarDecomposition",
    "TomographyRecord",
    "ReconstructionResult",
    "ReconstructionError",
    "polar_decompose",
    "closed_form_probabilities",
    "simulate_protocol",
    "reconstruct_density_matrix",
    "state_fidelity",
    "phase_aligned_fidelity",
]
