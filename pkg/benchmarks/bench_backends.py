#!/usr/bin/env python3
"""Timing comparison of the pure-NumPy and Cython compute kernels.

Runs the two hot kernels — the fixed-step master-equation integrator and
the discord measurement-angle grid scan — through both backends on
identical inputs, checks that they agree, and reports per-call times and
the speedup.  Usage:

    python3 benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import importlib.util
import math
import sys
import time

import numpy as np

from qdcorr._backend import _py
from qdcorr.fock import basis_ket, pure_state_density
from qdcorr.models import (
    QD_MF_REGISTER,
    OpenSystemParams,
    QdMfParams,
    build_qd_mf_hamiltonian,
    lindblad_jump_operators,
)

RK4_SUBSTEPS = 1000
SCAN_CALLS = 50


def _bloch(rho):
    """Bloch decomposition (r_A, r_B, correlation matrix) of a 4x4 state."""
    paulis = (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.diag([1.0, -1.0]).astype(complex),
    )
    tensor = rho.reshape(2, 2, 2, 2)
    r_a = np.array([np.einsum("akbk,ba->", tensor, p).real for p in paulis])
    r_b = np.array([np.einsum("akal,lk->", tensor, p).real for p in paulis])
    corr = np.array(
        [
            [np.einsum("akbl,ba,lk->", tensor, pi, pj).real for pj in paulis]
            for pi in paulis
        ]
    )
    return r_a, r_b, corr


def _rk4_inputs():
    h = build_qd_mf_hamiltonian(QdMfParams(epsilon_m=0.5))
    jumps = np.asarray(
        lindblad_jump_operators(OpenSystemParams(gamma=0.05), QD_MF_REGISTER),
        dtype=complex,
    )
    mmat = -1j * h - 0.5 * sum(a.conj().T @ a for a in jumps)
    rho0 = pure_state_density(basis_ket(QD_MF_REGISTER, (0, 0, 1))).elements
    return rho0, mmat, jumps


def _scan_inputs(seed=7):
    rng = np.random.default_rng(seed)
    rho = np.zeros((4, 4), dtype=complex)
    for w in rng.dirichlet(np.ones(4)):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        rho += w * np.outer(psi, psi.conj())
    r_a, r_b, corr = _bloch(rho)
    thetas = np.linspace(0.0, math.pi, 65)
    phis = np.linspace(0.0, 2.0 * math.pi, 129)
    return r_b, r_a, corr, thetas, phis


def _best_time(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--repeats", type=int, default=7, help="timing repeats per kernel (best kept)"
    )
    args = parser.parse_args(argv)

    if importlib.util.find_spec("qdcorr._backend._core") is None:
        print("cython backend is not built; nothing to compare")
        print("(build it with: pip install -e . --no-build-isolation)")
        return 1
    from qdcorr._backend import _core

    rho0, mmat, jumps = _rk4_inputs()
    rk4_py = _py.rk4_lindblad(rho0, mmat, jumps, 1e-3, RK4_SUBSTEPS)
    rk4_cy = _core.rk4_lindblad(rho0, mmat, jumps, 1e-3, RK4_SUBSTEPS)
    rk4_gap = float(np.max(np.abs(rk4_py - rk4_cy)))

    r_b, r_a, corr, thetas, phis = _scan_inputs()
    v_py = _py.discord_scan(r_b, r_a, corr, thetas, phis)[0]
    v_cy = _core.discord_scan(r_b, r_a, corr, thetas, phis)[0]
    scan_gap = abs(v_py - v_cy)

    if rk4_gap > 1e-12 or scan_gap > 1e-12:
        print(f"backend mismatch: rk4 {rk4_gap:.3e}, scan {scan_gap:.3e}")
        return 1

    rows = []
    t_py = _best_time(
        lambda: _py.rk4_lindblad(rho0, mmat, jumps, 1e-3, RK4_SUBSTEPS), args.repeats
    )
    t_cy = _best_time(
        lambda: _core.rk4_lindblad(rho0, mmat, jumps, 1e-3, RK4_SUBSTEPS), args.repeats
    )
    rows.append((f"master-equation RK4 x{RK4_SUBSTEPS}", t_py, t_cy))

    def scan_many(impl):
        for _ in range(SCAN_CALLS):
            impl.discord_scan(r_b, r_a, corr, thetas, phis)

    t_py = _best_time(lambda: scan_many(_py), args.repeats) / SCAN_CALLS
    t_cy = _best_time(lambda: scan_many(_core), args.repeats) / SCAN_CALLS
    rows.append(("discord angle scan 65x129", t_py, t_cy))

    name_w = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{name_w}}  {'python':>10}  {'cython':>10}  {'speedup':>7}")
    for name, py_s, cy_s in rows:
        print(
            f"{name:<{name_w}}  {py_s * 1e3:>8.3f}ms  {cy_s * 1e3:>8.3f}ms  "
            f"{py_s / cy_s:>6.1f}x"
        )
    print(f"(agreement: rk4 {rk4_gap:.1e}, scan {scan_gap:.1e}; best of {args.repeats})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
