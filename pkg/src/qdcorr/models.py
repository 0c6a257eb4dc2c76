"""Model builders: every Hamiltonian and jump-operator set used by the
simulator, in the regular-fermion representation.

All energies are measured in units of the dot-fermion coupling lambda
and all times in 1/lambda.  Register orderings are fixed here so traced
modes sit in predictable positions:

    QD-MF system      (D1, D2, F)
    single fermion    (D1, D2, C)
    fermion pair      (D1, D2, C1, C2)
    tomography        (DL, DR, D1, D2, F)
"""

from dataclasses import dataclass

import numpy as np

from .fock import ModeRegister, annihilation_operator

__all__ = [
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
]

QD_MF_REGISTER = ModeRegister(("D1", "D2", "F"))
SINGLE_FERMION_REGISTER = ModeRegister(("D1", "D2", "C"))
FERMION_PAIR_REGISTER = ModeRegister(("D1", "D2", "C1", "C2"))
TOMOGRAPHY_REGISTER = ModeRegister(("DL", "DR", "D1", "D2", "F"))


@dataclass(frozen=True)
class QdMfParams:
    """Parameters of the two-dot / Majorana-pair model (units of lambda).

    epsilon_m is the Majorana overlap splitting, epsilon_1/epsilon_2 the
    dot levels, lambda_1/lambda_2 the dot-Majorana couplings.  Couplings
    are non-negative: any coupling phase is absorbed into the dot
    operators by a gauge rotation, which is taken as already applied.
    """

    epsilon_m: float = 0.0
    epsilon_1: float = 0.0
    epsilon_2: float = 0.0
    lambda_1: float = 1.0
    lambda_2: float = 1.0

    def __post_init__(self):
        if self.lambda_1 < 0 or self.lambda_2 < 0:
            raise ValueError("couplings lambda_1, lambda_2 must be >= 0")


@dataclass(frozen=True)
class FermionModelParams:
    """Parameters of the regular-fermion control models.

    variant selects which fields are meaningful: "single_fermion" uses
    epsilon_c (the shared fermion level); "fermion_pair" uses epsilon_1f
    and epsilon_2f (one level per fermion).
    """

    variant: str = "single_fermion"
    epsilon_c: float = 0.0
    epsilon_1f: float = 0.0
    epsilon_2f: float = 0.0
    epsilon_1: float = 0.0
    epsilon_2: float = 0.0
    lambda_1: float = 1.0
    lambda_2: float = 1.0

    def __post_init__(self):
        if self.variant not in ("single_fermion", "fermion_pair"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.lambda_1 < 0 or self.lambda_2 < 0:
            raise ValueError("couplings lambda_1, lambda_2 must be >= 0")


@dataclass(frozen=True)
class OpenSystemParams:
    """Lead-coupling parameters: gamma is the tunneling rate to the leads."""

    gamma: float = 0.0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")


def build_qd_mf_hamiltonian(p):
    """8x8 Hamiltonian of two dots coupled to a Majorana pair on (D1, D2, F).

    H = eps_m (f^dag f - 1/2)
        + sum_j [eps_j d_j^dag d_j + lambda_j (d_j^dag f + f^dag d_j)]
        - lambda_1 (d_1^dag f^dag + f d_1)
        + lambda_2 (d_2^dag f^dag + f d_2)

    The pairing terms break particle-number conservation but preserve
    total parity.
    """
    reg = QD_MF_REGISTER
    d1 = annihilation_operator(reg, "D1")
    d2 = annihilation_operator(reg, "D2")
    f = annihilation_operator(reg, "F")
    d1d, d2d, fd = d1.conj().T, d2.conj().T, f.conj().T
    h = p.epsilon_m * (fd @ f - 0.5 * np.eye(reg.dimension))
    h = h + p.epsilon_1 * d1d @ d1 + p.epsilon_2 * d2d @ d2
    h = h + p.lambda_1 * (d1d @ f + fd @ d1) + p.lambda_2 * (d2d @ f + fd @ d2)
    h = h - p.lambda_1 * (d1d @ fd + f @ d1) + p.lambda_2 * (d2d @ fd + f @ d2)
    return h


def build_single_fermion_hamiltonian(p):
    """8x8 Hamiltonian of two dots sharing one regular fermion on (D1, D2, C).

    H = eps_c c^dag c + sum_j [eps_j d_j^dag d_j
                               + lambda_j (d_j^dag c + c^dag d_j)]

    Conserves total particle number.
    """
    if p.variant != "single_fermion":
        raise ValueError(f"expected variant 'single_fermion', got {p.variant!r}")
    reg = SINGLE_FERMION_REGISTER
    d1 = annihilation_operator(reg, "D1")
    d2 = annihilation_operator(reg, "D2")
    c = annihilation_operator(reg, "C")
    d1d, d2d, cd = d1.conj().T, d2.conj().T, c.conj().T
    h = p.epsilon_c * cd @ c
    h = h + p.epsilon_1 * d1d @ d1 + p.epsilon_2 * d2d @ d2
    h = h + p.lambda_1 * (d1d @ c + cd @ d1) + p.lambda_2 * (d2d @ c + cd @ d2)
    return h


def build_fermion_pair_hamiltonian(p):
    """16x16 Hamiltonian of two independent dot-fermion pairs on (D1, D2, C1, C2).

    H = sum_j [eps_j d_j^dag d_j + eps_jf c_j^dag c_j
               + lambda_j (d_j^dag c_j + c_j^dag d_j)]

    There is no cross coupling: the (D1, C1) and (D2, C2) pairs evolve
    independently.
    """
    if p.variant != "fermion_pair":
        raise ValueError(f"expected variant 'fermion_pair', got {p.variant!r}")
    reg = FERMION_PAIR_REGISTER
    d1 = annihilation_operator(reg, "D1")
    d2 = annihilation_operator(reg, "D2")
    c1 = annihilation_operator(reg, "C1")
    c2 = annihilation_operator(reg, "C2")
    h = p.epsilon_1 * d1.conj().T @ d1 + p.epsilon_2 * d2.conj().T @ d2
    h = h + p.epsilon_1f * c1.conj().T @ c1 + p.epsilon_2f * c2.conj().T @ c2
    h = h + p.lambda_1 * (d1.conj().T @ c1 + c1.conj().T @ d1)
    h = h + p.lambda_2 * (d2.conj().T @ c2 + c2.conj().T @ d2)
    return h


def build_tomography_hamiltonian(T):
    """Readout-stage mixing Hamiltonian on (DL, DR, D1, D2, F).

    Couples each auxiliary dot to its neighboring system dot with equal
    strength T through local excitation-exchange couplers,

        H = i T (d_L^dag d_1 - d_1^dag d_L) + i T (d_R^dag d_2 - d_2^dag d_R),

    and acts as the identity on the mode F.  The couplers are built from
    string-free local lowering operators (each dot treated as a two-level
    site), the reading under which the auxiliary superposition
    preparation (|0> + |1>)/sqrt(2) is meaningful; evolving for exactly
    pi/(4T) realizes the balanced mixing the occupation readout needs.
    The dot-Majorana couplings are switched off during this stage, so no
    other term appears.
    """
    if T <= 0:
        raise ValueError(f"mixing coupling T must be > 0, got {T!r}")
    reg = TOMOGRAPHY_REGISTER
    n = reg.n_modes

    def local_lowering(label):
        p = reg.position(label)
        mats = [np.eye(2, dtype=complex)] * n
        mats[p] = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    dl, dr = local_lowering("DL"), local_lowering("DR")
    d1, d2 = local_lowering("D1"), local_lowering("D2")
    h = 1j * T * (dl.conj().T @ d1 - d1.conj().T @ dl)
    h = h + 1j * T * (dr.conj().T @ d2 - d2.conj().T @ dr)
    return h


def lindblad_jump_operators(p, register):
    """Jump operators [sqrt(gamma) d_1, sqrt(gamma) d_2] for lead tunneling.

    Electrons tunnel out of each dot into its lead at rate gamma; the
    register must contain modes D1 and D2.
    """
    rate = np.sqrt(p.gamma)
    return [
        rate * annihilation_operator(register, "D1"),
        rate * annihilation_operator(register, "D2"),
    ]
