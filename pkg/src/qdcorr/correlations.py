"""Quantum-correlation measures on two-dot density matrices.

Each dot is a qubit in its occupation basis (|0> empty, |1> occupied).
All entropic quantities are in bits (base-2 logarithms).  The quantum
discord minimizes the conditional entropy of dot 1 over all projective
measurements on dot 2 (the second, least-significant dot), with the
measurement basis parameterized by Bloch angles

    R(theta, phi) = [[cos(theta/2),              sin(theta/2) e^{-i phi}],
                     [sin(theta/2) e^{+i phi},  -cos(theta/2)          ]],

a Hermitian reflection whose columns sweep every projective basis for
theta in [0, pi], phi in [0, 2 pi].
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import impl as _kernels
from .fock import DensityMatrix, partial_trace

__all__ = [
    "MeasurementAngles",
    "DiscordResult",
    "von_neumann_entropy",
    "mutual_information",
    "concurrence",
    "conditional_entropy_after_measurement",
    "quantum_discord",
]

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.diag([1.0, -1.0]).astype(complex),
)
_YY = np.kron(_PAULI[2], _PAULI[2])

_THETA_GRID = np.linspace(0.0, math.pi, 65)
_PHI_GRID = np.linspace(0.0, 2.0 * math.pi, 129)


@dataclass(frozen=True)
class MeasurementAngles:
    """Bloch angles of a projective measurement direction."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi <= 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi], got {self.phi}")


@dataclass(frozen=True)
class DiscordResult:
    """Quantum discord with its entropic companions (all in bits)."""

    discord: float
    mutual_information: float
    classical_correlations: float
    argmin_angles: MeasurementAngles


def _require_two_modes(rho):
    if rho.register.n_modes != 2:
        raise ValueError(
            f"expected a two-mode register, got {rho.register.mode_labels!r}"
        )


def von_neumann_entropy(rho):
    """S(rho) = -Tr(rho log2 rho) in bits."""
    eigs = np.linalg.eigvalsh(rho.elements)
    eigs = np.clip(eigs.real, 0.0, 1.0)
    eigs = eigs[eigs > 0.0]
    return float(-(eigs * np.log2(eigs)).sum())


def mutual_information(rho_ab):
    """I(A:B) = S(A) + S(B) - S(AB) in bits, via partial traces."""
    _require_two_modes(rho_ab)
    a, b = rho_ab.register.mode_labels
    s_a = von_neumann_entropy(partial_trace(rho_ab, [a]))
    s_b = von_neumann_entropy(partial_trace(rho_ab, [b]))
    return s_a + s_b - von_neumann_entropy(rho_ab)


def concurrence(rho_d):
    """Two-qubit concurrence: max{0, L1 - L2 - L3 - L4}.

    The L_i are the decreasingly ordered square roots of the
    eigenvalues of rho (sy x sy) rho* (sy x sy); they are computed as
    the singular values of sqrt(rho) (sy x sy) sqrt(rho)*, which is the
    same quantity (the two matrices are similar) without the precision
    loss of taking square roots of near-zero eigenvalues.
    """
    _require_two_modes(rho_d)
    rho = rho_d.elements
    eigs, vecs = np.linalg.eigh(rho)
    sqrt_rho = (vecs * np.sqrt(np.clip(eigs.real, 0.0, None))) @ vecs.conj().T
    svals = np.linalg.svd(sqrt_rho @ _YY @ sqrt_rho.conj(), compute_uv=False)
    return max(0.0, float(svals[0] - svals[1] - svals[2] - svals[3]))


def _measurement_basis(angles):
    c = math.cos(angles.theta / 2.0)
    s = math.sin(angles.theta / 2.0)
    phase = np.exp(1j * angles.phi)
    r = np.array([[c, s / phase], [s * phase, -c]], dtype=complex)
    b0 = r @ np.diag([1.0, 0.0]).astype(complex) @ r.conj().T
    b1 = r @ np.diag([0.0, 1.0]).astype(complex) @ r.conj().T
    return b0, b1


def conditional_entropy_after_measurement(rho_ab, angles):
    """sum_k p_k S(rho_k) after projectively measuring dot 2.

    Literal projector arithmetic: B_k = R Pi_k R^dag,
    p_k = Tr[(I x B_k) rho (I x B_k)], rho_k the renormalized
    post-measurement state.  Outcomes with p_k < 1e-14 contribute 0.
    """
    _require_two_modes(rho_ab)
    rho = rho_ab.elements
    total = 0.0
    for b in _measurement_basis(angles):
        proj = np.kron(np.eye(2, dtype=complex), b)
        post = proj @ rho @ proj
        p = float(post.trace().real)
        if p < 1e-14:
            continue
        eigs = np.clip(np.linalg.eigvalsh(post / p).real, 0.0, 1.0)
        eigs = eigs[eigs > 0.0]
        total += p * float(-(eigs * np.log2(eigs)).sum())
    return total


def _bloch_decomposition(rho4):
    """Bloch vectors of both dots and the 3x3 correlation matrix."""
    tensor = rho4.reshape(2, 2, 2, 2)
    r = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            r[i, j] = np.einsum(
                "ijkl,ki,lj->", tensor, _PAULI[i], _PAULI[j]
            ).real
    return r[1:, 0], r[0, 1:], r[1:, 1:]


def quantum_discord(rho_ab):
    """Quantum discord of a two-dot state, measured on dot 2.

    discord = I(A:B) - max over angles of [S(A) - sum_k p_k S(rho_k)].
    The maximization runs a deterministic 65 x 129 coarse grid over
    (theta, phi) followed by compass descent (step halving, accept on
    1e-10 improvement, stop below step 1e-7).  A result within -1e-8 of
    0 is clamped to 0 (and classical correlations to the mutual
    information, preserving the identity).
    """
    _require_two_modes(rho_ab)
    a_label, _ = rho_ab.register.mode_labels
    s_a = von_neumann_entropy(partial_trace(rho_ab, [a_label]))
    mi = mutual_information(rho_ab)

    r_a, r_b, corr = _bloch_decomposition(rho_ab.elements)
    best, theta, phi = _kernels.discord_scan(
        r_b, r_a, corr, _THETA_GRID, _PHI_GRID
    )

    dth = _THETA_GRID[1] - _THETA_GRID[0]
    dph = _PHI_GRID[1] - _PHI_GRID[0]
    scale = 1.0
    while scale * max(dth, dph) > 1e-7:
        candidates = []
        for cth, cph in (
            (theta + scale * dth, phi),
            (theta - scale * dth, phi),
            (theta, phi + scale * dph),
            (theta, phi - scale * dph),
        ):
            cth = min(max(cth, 0.0), math.pi)
            cph = cph % (2.0 * math.pi)
            candidates.append(
                (_kernels.discord_objective(r_b, r_a, corr, cth, cph), cth, cph)
            )
        val, cth, cph = min(candidates, key=lambda c: c[0])
        if val < best - 1e-10:
            best, theta, phi = val, cth, cph
        else:
            scale *= 0.5

    classical = s_a - best
    discord = mi - classical
    if discord < 0.0:
        if discord < -1e-8:
            raise ArithmeticError(
                f"discord minimization returned {discord:.3e} < -1e-8; "
                "the input state is likely invalid"
            )
        discord = 0.0
        classical = mi
    return DiscordResult(
        discord=float(discord),
        mutual_information=float(mi),
        classical_correlations=float(classical),
        argmin_angles=MeasurementAngles(float(theta), float(phi)),
    )
