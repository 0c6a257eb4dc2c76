"""Fermionic Fock-space foundation: mode registers, canonical operators,
states, and partial traces.

A register fixes an ordered list of fermionic modes.  Occupation basis
states are indexed with the first mode as the most significant bit, and
basis kets are defined by applying creation operators in register order
to the vacuum, which fixes every sign downstream.  Operators are built
dense via the Jordan-Wigner construction, so the canonical
anticommutation relations hold exactly as matrix identities.
"""

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

__all__ = [
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
]

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |0><1|
_SIGN = np.diag([1.0, -1.0]).astype(complex)                # (-1)^n
_ID2 = np.eye(2, dtype=complex)


def _kron_chain(factors):
    return reduce(np.kron, factors)


@dataclass(frozen=True)
class ModeRegister:
    """Ordered collection of fermionic modes.

    The ordering is fixed at construction: it defines both the
    occupation-basis index convention (first label = most significant
    bit) and the creation-operator ordering used for basis kets.
    """

    mode_labels: tuple

    def __init__(self, mode_labels):
        labels = tuple(mode_labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"mode labels must be unique, got {labels!r}")
        if not labels:
            raise ValueError("register needs at least one mode")
        object.__setattr__(self, "mode_labels", labels)

    @property
    def n_modes(self):
        return len(self.mode_labels)

    @property
    def dimension(self):
        return 2 ** len(self.mode_labels)

    def position(self, label):
        """Index of a mode label within the register (0 = most significant)."""
        try:
            return self.mode_labels.index(label)
        except ValueError:
            raise ValueError(
                f"unknown mode label {label!r}; register has {self.mode_labels!r}"
            ) from None


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state over a register; unit norm enforced at construction."""

    register: ModeRegister
    amplitudes: np.ndarray = field(repr=False)

    def __init__(self, register, amplitudes):
        amps = np.asarray(amplitudes, dtype=complex)
        if amps.shape != (register.dimension,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected "
                f"({register.dimension},)"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state vector norm {norm!r} deviates from 1 beyond 1e-12")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "register", register)
        object.__setattr__(self, "amplitudes", amps)

    def density(self):
        """The projector |psi><psi| as a DensityMatrix."""
        return pure_state_density(self)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed state over a register.

    Validated at construction: Hermitian within 1e-10 (max element),
    unit trace within 1e-8, eigenvalues >= -positivity_tol (default
    1e-8; integrators pass a looser floor for truncation artifacts).
    """

    register: ModeRegister
    elements: np.ndarray = field(repr=False)

    def __init__(self, register, elements, positivity_tol=1e-8):
        mat = np.asarray(elements, dtype=complex)
        d = register.dimension
        if mat.shape != (d, d):
            raise ValueError(f"matrix has shape {mat.shape}, expected ({d}, {d})")
        herm_dev = abs(mat - mat.conj().T).max()
        if herm_dev > 1e-10:
            raise ValueError(f"matrix not Hermitian: max deviation {herm_dev:.3e}")
        trace_dev = abs(mat.trace() - 1.0)
        if trace_dev > 1e-8:
            raise ValueError(f"trace deviates from 1 by {trace_dev:.3e}")
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -positivity_tol:
            raise ValueError(
                f"matrix not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "register", register)
        object.__setattr__(self, "elements", mat)


def annihilation_operator(register, mode):
    """Jordan-Wigner annihilation matrix for one mode of a register.

    The string of sign factors on the modes preceding `mode` makes the
    canonical anticommutation relations exact: {a_i, a_j^dag} = delta_ij I
    and {a_i, a_j} = 0 as matrix identities.
    """
    p = register.position(mode)
    n = register.n_modes
    return _kron_chain([_SIGN] * p + [_LOWER] + [_ID2] * (n - p - 1))


def creation_operator(register, mode):
    """Hermitian conjugate of annihilation_operator."""
    return annihilation_operator(register, mode).conj().T


def number_operator(register, mode):
    """Occupation-number matrix a^dag a for one mode."""
    a = annihilation_operator(register, mode)
    return a.conj().T @ a


def parity_operator(register):
    """(-1)^(total occupation), diagonal in the occupation basis."""
    n = register.n_modes
    return _kron_chain([_SIGN] * n)


def majorana_pair(register, f_mode):
    """Majorana partners (gamma_1, gamma_2) of a fermionic mode f.

    gamma_1 = i(f - f^dag), gamma_2 = f + f^dag.  Each is Hermitian and
    squares to the identity; the pair anticommutes.
    """
    f = annihilation_operator(register, f_mode)
    fd = f.conj().T
    return 1j * (f - fd), f + fd


def basis_ket(register, occupations):
    """Occupation basis ket with the register's sign gauge.

    The ket for occupations (n_1, ..., n_k) is defined as the creation
    operators of the occupied modes applied in register order to the
    vacuum; with this convention every basis ket has amplitude +1 at its
    index and plain tensor products of register-ordered factors agree
    with operator-built product states.
    """
    occs = list(occupations)
    n = register.n_modes
    if len(occs) != n:
        raise ValueError(
            f"got {len(occs)} occupation numbers for a {n}-mode register"
        )
    idx = 0
    for bit in occs:
        if bit not in (0, 1):
            raise ValueError(f"occupations must be 0 or 1, got {bit!r}")
        idx = (idx << 1) | bit
    amps = np.zeros(register.dimension, dtype=complex)
    amps[idx] = 1.0
    return StateVector(register, amps)


def pure_state_density(psi):
    """Density matrix of a pure state."""
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(psi.register, rho)


def partial_trace(rho, keep):
    """Reduced density matrix on a subset of modes.

    `keep` lists the mode labels to retain; the traced-out modes are
    summed as plain tensor factors in the ket gauge fixed by basis_ket.
    The result's register keeps the original register ordering
    restricted to the kept labels.
    """
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one mode")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate labels in keep: {keep!r}")
    reg = rho.register
    keep_pos = sorted(reg.position(label) for label in keep)
    n = reg.n_modes
    kept_labels = tuple(reg.mode_labels[p] for p in keep_pos)

    tensor = rho.elements.reshape((2,) * (2 * n))
    traced = [p for p in range(n) if p not in keep_pos]
    # Trace out modes one at a time, highest axis first so positions of
    # the remaining axes stay valid.
    for p in sorted(traced, reverse=True):
        k = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=p, axis2=k + p)
    k = len(keep_pos)
    reduced = tensor.reshape(2 ** k, 2 ** k)
    return DensityMatrix(ModeRegister(kept_labels), reduced)
