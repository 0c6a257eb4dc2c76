"""Time evolution: closed-system propagation by eigendecomposition,
closed-form odd-parity amplitudes for the resonant symmetric dot-MF
system, and a fixed-step RK4 integrator for the Lindblad master
equation

    drho/dt = -i [H, rho] + sum_k ( A_k rho A_k^dag
                                    - 1/2 {A_k^dag A_k, rho} ).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import impl as _kernels
from .fock import DensityMatrix, StateVector

__all__ = [
    "TimeGrid",
    "Trajectory",
    "IntegrationError",
    "analytic_odd_parity_coefficients",
    "evolve_closed",
    "evolve_lindblad",
]


class IntegrationError(RuntimeError):
    """The master-equation integration left its validity envelope."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling grid with an integrator substep.

    Samples lie at n_points equally spaced times on [t_start, t_end];
    dt_internal is the RK4 substep and may not exceed the sample
    spacing.
    """

    t_start: float
    t_end: float
    n_points: int
    dt_internal: float = 1e-3

    def __post_init__(self):
        if self.t_end <= self.t_start:
            raise ValueError(
                f"t_end ({self.t_end}) must exceed t_start ({self.t_start})"
            )
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        if self.dt_internal <= 0:
            raise ValueError(f"dt_internal must be > 0, got {self.dt_internal}")
        if self.dt_internal > self.spacing * (1 + 1e-12):
            raise ValueError(
                f"dt_internal ({self.dt_internal}) exceeds the sample "
                f"spacing ({self.spacing})"
            )

    @property
    def spacing(self):
        return (self.t_end - self.t_start) / (self.n_points - 1)

    @property
    def times(self):
        return np.linspace(self.t_start, self.t_end, self.n_points)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled evolution: times plus one state (pure or mixed) per time."""

    times: np.ndarray = field(repr=False)
    states: tuple = field(repr=False)

    def __init__(self, times, states):
        times = np.asarray(times, dtype=float)
        states = tuple(states)
        if len(times) != len(states):
            raise ValueError("times and states lengths differ")
        kinds = {type(s) for s in states}
        if len(kinds) > 1:
            raise ValueError(f"states must be of a uniform kind, got {kinds}")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)

    def __len__(self):
        return len(self.times)


def analytic_odd_parity_coefficients(epsilon_m, lam, t):
    """Closed-form amplitudes (C1, C2, C3, C4) on (|111>, |100>, |010>, |001>).

    Valid for the symmetric resonant dot-MF system (both dot levels 0,
    equal couplings lam > 0) evolved from |0,0,1>.  With
    Delta = sqrt(epsilon_m^2 + 16 lam^2)/2 and Omega = epsilon_m/2:

        C1 = (-Delta e^{-i Omega t} + Delta cos(Delta t)
              - i Omega sin(Delta t)) / (2 Delta)
        C2 = C3 = -i lam sin(Delta t) / Delta
        C4 = (+Delta e^{-i Omega t} + Delta cos(Delta t)
              - i Omega sin(Delta t)) / (2 Delta)
    """
    if lam <= 0:
        raise ValueError(f"coupling lam must be > 0, got {lam!r}")
    delta = math.sqrt(epsilon_m**2 + 16.0 * lam**2) / 2.0
    omega = epsilon_m / 2.0
    rot = np.exp(-1j * omega * t)
    cosd = math.cos(delta * t)
    sind = math.sin(delta * t)
    common = delta * cosd - 1j * omega * sind
    c1 = (-delta * rot + common) / (2.0 * delta)
    c4 = (delta * rot + common) / (2.0 * delta)
    c2 = -1j * lam * sind / delta
    return c1, c2, c2, c4


def evolve_closed(hamiltonian, psi0, grid):
    """Closed evolution exp(-iHt)|psi0> sampled on a grid.

    Uses a single Hermitian eigendecomposition, so each sample is exact
    to machine precision at arbitrary t.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    dim = psi0.register.dimension
    if h.shape != (dim, dim):
        raise ValueError(
            f"Hamiltonian shape {h.shape} does not match register "
            f"dimension {dim}"
        )
    if abs(h - h.conj().T).max() > 1e-10:
        raise ValueError("Hamiltonian is not Hermitian")
    energies, modes = np.linalg.eigh(h)
    coeffs = modes.conj().T @ psi0.amplitudes
    states = []
    for t in grid.times:
        amps = modes @ (np.exp(-1j * energies * t) * coeffs)
        states.append(StateVector(psi0.register, amps))
    return Trajectory(grid.times, states)


def evolve_lindblad(hamiltonian, jumps, rho0, grid):
    """Master-equation evolution sampled on a grid.

    Fixed-step RK4 at grid.dt_internal (the last substep of each sample
    interval is shortened to land exactly on the sample).  Every sample
    is validated: trace within 1e-8 of 1 and minimum eigenvalue above
    -1e-6, else an IntegrationError suggests a smaller dt_internal.
    With no jump operators this reduces to unitary evolution and agrees
    with evolve_closed to integrator accuracy.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    dim = rho0.register.dimension
    if h.shape != (dim, dim):
        raise ValueError(
            f"Hamiltonian shape {h.shape} does not match register "
            f"dimension {dim}"
        )
    jumps = [np.asarray(a, dtype=complex) for a in jumps]
    for a in jumps:
        if a.shape != (dim, dim):
            raise ValueError(
                f"jump operator shape {a.shape} does not match register "
                f"dimension {dim}"
            )
    if jumps:
        jump_stack = np.ascontiguousarray(np.stack(jumps))
    else:
        jump_stack = np.zeros((0, dim, dim), dtype=complex)

    mmat = -1j * h
    for a in jumps:
        mmat = mmat - 0.5 * (a.conj().T @ a)

    times = grid.times
    states = [rho0]
    rho = np.array(rho0.elements, dtype=complex)
    for k in range(1, len(times)):
        span = times[k] - times[k - 1]
        nsub = max(1, math.ceil(span / grid.dt_internal - 1e-12))
        rho = _kernels.rk4_lindblad(rho, mmat, jump_stack, span / nsub, nsub)
        trace_dev = abs(rho.trace() - 1.0)
        if trace_dev > 1e-8:
            raise IntegrationError(
                f"trace deviates by {trace_dev:.3e} at t = {times[k]:g}; "
                "use a smaller dt_internal"
            )
        min_eig = float(np.linalg.eigvalsh(rho)[0])
        if min_eig < -1e-6:
            raise IntegrationError(
                f"state lost positivity (min eigenvalue {min_eig:.3e}) at "
                f"t = {times[k]:g}; use a smaller dt_internal"
            )
        try:
            states.append(DensityMatrix(rho0.register, rho, positivity_tol=1e-6))
        except ValueError as exc:
            raise IntegrationError(
                f"integration produced an invalid state at t = {times[k]:g} "
                f"({exc}); use a smaller dt_internal"
            ) from None
    return Trajectory(times, states)
