"""Occupation-probability tomography of the two-dot state.

The dot-MF state at any instant has the odd-parity form

    |Psi> = b1 e^{i phi1}|1,1,1> + b2|1,0,0> + b2|0,1,0> + b3 e^{i phi3}|0,0,1>,

whose reduced two-dot matrix is an X-state with corner coherence
b1 b3 e^{i delta_phi}, delta_phi = phi1 - phi3.  The protocol switches
the dot-MF couplings off, couples each dot to an auxiliary dot prepared
in (|0> + |1>)/sqrt(2), lets the four dots mix for exactly pi/(4 T),
and reads out the joint occupation probabilities of D1 and D2:

    P11 = [9 b1^2 + 8 b2^2 +   b3^2 + 2 b1 b3 cos(delta_phi)] / 16
    P10 = P01 = [3 b1^2 + 8 b2^2 + 3 b3^2 - 2 b1 b3 cos(delta_phi)] / 16
    P00 = [  b1^2 + 8 b2^2 + 9 b3^2 + 2 b1 b3 cos(delta_phi)] / 16

Populations plus P11 therefore determine cos(delta_phi) and with it the
full matrix up to the sign of sin(delta_phi), which is unobservable in
every correlation measure (a local phase).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .fock import (
    DensityMatrix,
    ModeRegister,
    StateVector,
    partial_trace,
    pure_state_density,
)
from .models import QD_MF_REGISTER, build_tomography_hamiltonian

__all__ = [
    "ODD_PARITY_INDICES",
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

TWO_DOT_REGISTER = ModeRegister(("D1", "D2"))

# Odd-parity basis indices on (D1, D2, F): |111>, |100>, |010>, |001>.
ODD_PARITY_INDICES = (7, 4, 2, 1)


class ReconstructionError(ValueError):
    """Measured probabilities are inconsistent with the expected state form."""


@dataclass(frozen=True)
class PolarDecomposition:
    """Magnitude/phase form of the odd-parity amplitudes."""

    b1: float
    b2: float
    b3: float
    phi1: float
    phi3: float
    delta_phi: float

    def __post_init__(self):
        if self.b1 < 0 or self.b2 < 0 or self.b3 < 0:
            raise ValueError("amplitude magnitudes must be >= 0")
        norm_dev = abs(self.b1**2 + 2 * self.b2**2 + self.b3**2 - 1.0)
        if norm_dev > 1e-10:
            raise ValueError(
                f"b1^2 + 2 b2^2 + b3^2 deviates from 1 by {norm_dev:.3e}"
            )


@dataclass(frozen=True, eq=False)
class TomographyRecord:
    """Joint occupation probabilities plus the reconstructed matrix."""

    p11: float
    p10: float
    p01: float
    p00: float
    reconstructed: DensityMatrix = field(repr=False)
    reference: DensityMatrix = field(repr=False)
    phase_recovered: bool = True

    def __post_init__(self):
        probs = (self.p11, self.p10, self.p01, self.p00)
        if min(probs) < -1e-12:
            raise ValueError(f"negative probability in {probs!r}")
        if abs(sum(probs) - 1.0) > 1e-10:
            raise ValueError(f"probabilities {probs!r} do not sum to 1")


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    """Reconstructed two-dot matrix with phase-recovery status."""

    matrix: DensityMatrix = field(repr=False)
    phase_recovered: bool
    cos_delta_phi: float | None


def _wrap_phase(x):
    w = math.remainder(x, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    return w


def polar_decompose(c1, c2, c3, c4):
    """Magnitudes and phases of odd-parity amplitudes (C1, C2, C3, C4).

    Requires |C2| = |C3| (the two single-occupation amplitudes share a
    magnitude, their common phase being unobservable); tracks only the
    relative phase delta_phi = phi1 - phi3, reduced to (-pi, pi].
    """
    if abs(abs(c2) - abs(c3)) > 1e-10:
        raise ValueError(
            "single-occupation amplitudes differ in magnitude "
            f"(|C2| = {abs(c2)!r}, |C3| = {abs(c3)!r}); state is outside "
            "the symmetric odd-parity form"
        )
    phi1 = float(np.angle(c1))
    phi3 = float(np.angle(c4))
    return PolarDecomposition(
        b1=abs(c1),
        b2=abs(c2),
        b3=abs(c4),
        phi1=phi1,
        phi3=phi3,
        delta_phi=_wrap_phase(phi1 - phi3),
    )


def closed_form_probabilities(pd):
    """Joint occupation probabilities (P11, P10, P01, P00) of the protocol."""
    b1sq, b2sq, b3sq = pd.b1**2, pd.b2**2, pd.b3**2
    cross = 2.0 * pd.b1 * pd.b3 * math.cos(pd.delta_phi)
    p11 = (9.0 * b1sq + 8.0 * b2sq + b3sq + cross) / 16.0
    p10 = (3.0 * b1sq + 8.0 * b2sq + 3.0 * b3sq - cross) / 16.0
    p00 = (b1sq + 8.0 * b2sq + 9.0 * b3sq + cross) / 16.0
    return p11, p10, p10, p00


def _x_state_matrix(b1, b2, b3, corner):
    """Two-dot X-state with diagonal (b3^2, b2^2, b2^2, b1^2), middle
    coherence b2^2 and the given corner coherence <11|rho|00>."""
    rho = np.diag([b3**2, b2**2, b2**2, b1**2]).astype(complex)
    rho[1, 2] = rho[2, 1] = b2**2
    rho[3, 0] = corner
    rho[0, 3] = np.conj(corner)
    return DensityMatrix(TWO_DOT_REGISTER, rho)


def reconstruct_density_matrix(probs, populations):
    """Invert the protocol probabilities into the two-dot matrix.

    `probs` is (P11, P10, P01, P00) and `populations` the directly
    measurable magnitudes (b1, b2, b3).  The corner phase is recovered
    from cos(delta_phi) = (16 P11 - 9 b1^2 - 8 b2^2 - b3^2)/(2 b1 b3)
    with sin(delta_phi) taken non-negative (the sign is unobservable in
    any correlation measure).  When b1 b3 < 1e-6 the phase carries no
    weight: a populations-only matrix is returned with phase_recovered
    False.  A recovered |cos| beyond 1 + 1e-8 raises
    ReconstructionError; smaller overshoots are clamped.
    """
    p11 = float(probs[0])
    b1, b2, b3 = (float(b) for b in populations)
    if b1 * b3 < 1e-6:
        return ReconstructionResult(
            matrix=_x_state_matrix(b1, b2, b3, 0.0),
            phase_recovered=False,
            cos_delta_phi=None,
        )
    cos_dphi = (16.0 * p11 - 9.0 * b1**2 - 8.0 * b2**2 - b3**2) / (2.0 * b1 * b3)
    if abs(cos_dphi) > 1.0 + 1e-8:
        raise ReconstructionError(
            f"recovered cos(delta_phi) = {cos_dphi!r} lies outside [-1, 1]; "
            "probabilities are inconsistent with the expected state form"
        )
    cos_dphi = min(1.0, max(-1.0, cos_dphi))
    sin_dphi = math.sqrt(1.0 - cos_dphi**2)
    corner = b1 * b3 * complex(cos_dphi, sin_dphi)
    return ReconstructionResult(
        matrix=_x_state_matrix(b1, b2, b3, corner),
        phase_recovered=True,
        cos_delta_phi=cos_dphi,
    )


def simulate_protocol(psi_t, T):
    """Run the full readout protocol on a dot-MF state.

    Embeds psi_t (a state on (D1, D2, F) in the odd-parity form) into
    the five-mode register with both auxiliary dots in (|0>+|1>)/sqrt(2),
    evolves closed under the mixing Hamiltonian for exactly pi/(4 T),
    and reads the joint occupation probabilities of D1 and D2.  The
    returned record carries the reconstruction from those probabilities
    alongside the reference (the direct partial trace of psi_t).
    """
    if psi_t.register.mode_labels != QD_MF_REGISTER.mode_labels:
        raise ValueError(
            f"expected a state on register {QD_MF_REGISTER.mode_labels!r}, "
            f"got {psi_t.register.mode_labels!r}"
        )
    amps = psi_t.amplitudes
    outside = sum(
        abs(amps[i]) ** 2 for i in range(8) if i not in ODD_PARITY_INDICES
    )
    if outside > 1e-10:
        raise ValueError(
            f"state has weight {outside:.3e} outside the odd-parity "
            "superposition form"
        )
    pd = polar_decompose(*(amps[i] for i in ODD_PARITY_INDICES))

    plus = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    psi32 = np.kron(np.kron(plus, plus), amps)

    h = build_tomography_hamiltonian(T)
    energies, modes = np.linalg.eigh(h)
    phases = np.exp(-1j * energies * (math.pi / (4.0 * T)))
    evolved = modes @ (phases * (modes.conj().T @ psi32))
    norm_dev = abs(np.linalg.norm(evolved) - 1.0)
    if norm_dev > 1e-10:
        raise ValueError(f"protocol evolution lost norm by {norm_dev:.3e}")

    weights = np.abs(evolved) ** 2
    idx = np.arange(32)
    n1 = (idx >> 2) & 1
    n2 = (idx >> 1) & 1
    p11 = float(weights[(n1 == 1) & (n2 == 1)].sum())
    p10 = float(weights[(n1 == 1) & (n2 == 0)].sum())
    p01 = float(weights[(n1 == 0) & (n2 == 1)].sum())
    p00 = float(weights[(n1 == 0) & (n2 == 0)].sum())

    reconstruction = reconstruct_density_matrix(
        (p11, p10, p01, p00), (pd.b1, pd.b2, pd.b3)
    )
    reference = partial_trace(pure_state_density(psi_t), ["D1", "D2"])
    return TomographyRecord(
        p11=p11,
        p10=p10,
        p01=p01,
        p00=p00,
        reconstructed=reconstruction.matrix,
        reference=reference,
        phase_recovered=reconstruction.phase_recovered,
    )


def state_fidelity(rho, sigma):
    """Uhlmann fidelity F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    eigs, vecs = np.linalg.eigh(rho.elements)
    sqrt_rho = (vecs * np.sqrt(np.clip(eigs.real, 0.0, None))) @ vecs.conj().T
    inner = np.clip(
        np.linalg.eigvalsh(sqrt_rho @ sigma.elements @ sqrt_rho).real, 0.0, None
    )
    return float(np.sqrt(inner).sum() ** 2)


def phase_aligned_fidelity(reconstructed, reference):
    """Uhlmann fidelity after composing out the unobservable corner phase.

    The reconstruction fixes sin(delta_phi) >= 0, so its corner phase
    may differ from the reference's by a local phase.  Applying the same
    phase e^{i alpha/2} to the occupied level of *both* dots rotates the
    corner coherence by e^{i alpha} while leaving the single-occupation
    coherence untouched, which is exactly the freedom the protocol
    cannot observe.
    """
    alpha = float(
        np.angle(reconstructed.elements[3, 0]) - np.angle(reference.elements[3, 0])
    )
    half = np.diag([1.0, np.exp(1j * alpha / 2.0)]).astype(complex)
    u = np.kron(half, half)
    rotated = DensityMatrix(
        reference.register, u @ reference.elements @ u.conj().T
    )
    return state_fidelity(reconstructed, rotated)
