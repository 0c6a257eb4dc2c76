"""Hamiltonian builders and jump operators."""

import math

import numpy as np
import pytest

from qdcorr.dynamics import TimeGrid, evolve_closed
from qdcorr.fock import (
    basis_ket,
    number_operator,
    parity_operator,
    pure_state_density,
    partial_trace,
)
from qdcorr.models import (
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

ODD = (7, 4, 2, 1)  # |111>, |100>, |010>, |001> on (D1, D2, F)


# ---------------------------------------------------------------------------
# dot-MF Hamiltonian


def test_qd_mf_hamiltonian_is_hermitian_exactly():
    h = build_qd_mf_hamiltonian(QdMfParams(epsilon_m=0.7, epsilon_1=0.3))
    assert np.array_equal(h, h.conj().T)


def test_qd_mf_hamiltonian_diagonal_when_uncoupled():
    h = build_qd_mf_hamiltonian(
        QdMfParams(epsilon_m=0.8, lambda_1=0.0, lambda_2=0.0)
    )
    # pure splitting term: +eps_m/2 when F occupied, -eps_m/2 when empty
    expected = np.diag(
        [0.8 * ((idx & 1) - 0.5) for idx in range(8)]
    ).astype(complex)
    assert np.array_equal(h, expected)


def test_qd_mf_hamiltonian_conserves_parity_not_number():
    h = build_qd_mf_hamiltonian(QdMfParams(epsilon_m=0.5))
    par = parity_operator(QD_MF_REGISTER)
    assert np.all(h @ par - par @ h == 0)
    total_n = sum(
        number_operator(QD_MF_REGISTER, m) for m in ("D1", "D2", "F")
    )
    assert np.linalg.norm(h @ total_n - total_n @ h) > 0.5


def test_qd_mf_odd_parity_block_literal():
    eps = 0.7
    h = build_qd_mf_hamiltonian(QdMfParams(epsilon_m=eps))
    block = h[np.ix_(ODD, ODD)]
    lam = 1.0
    expected = np.array(
        [
            [eps / 2, lam, lam, 0.0],
            [lam, -eps / 2, 0.0, lam],
            [lam, 0.0, -eps / 2, lam],
            [0.0, lam, lam, eps / 2],
        ],
        dtype=complex,
    )
    assert np.allclose(block, expected, atol=1e-15)


def test_qd_mf_even_block_decouples_from_odd():
    h = build_qd_mf_hamiltonian(QdMfParams(epsilon_m=0.5))
    even = [0, 3, 5, 6]
    assert np.all(h[np.ix_(ODD, even)] == 0)
    assert np.all(h[np.ix_(even, ODD)] == 0)


def test_qd_mf_rejects_negative_couplings():
    with pytest.raises(ValueError):
        QdMfParams(lambda_1=-1.0)


# ---------------------------------------------------------------------------
# single regular fermion


def test_single_fermion_conserves_number():
    h = build_single_fermion_hamiltonian(
        FermionModelParams(variant="single_fermion", epsilon_c=0.4)
    )
    total_n = sum(
        number_operator(SINGLE_FERMION_REGISTER, m) for m in ("D1", "D2", "C")
    )
    assert np.allclose(h @ total_n, total_n @ h, atol=1e-14)


def test_single_fermion_resonant_amplitudes():
    # from |0,0,1> at resonance: the shared fermion Rabi-oscillates into
    # the symmetric dot combination at angular frequency sqrt(2)
    h = build_single_fermion_hamiltonian(
        FermionModelParams(variant="single_fermion", epsilon_c=0.0)
    )
    psi0 = basis_ket(SINGLE_FERMION_REGISTER, (0, 0, 1))
    for t in (0.3, 0.9, 2.2):
        traj = evolve_closed(h, psi0, TimeGrid(0.0, t, 2))
        amps = traj.states[-1].amplitudes
        root2 = math.sqrt(2.0)
        assert abs(amps[1] - math.cos(root2 * t)) < 1e-12
        assert abs(amps[4] - (-1j) * math.sin(root2 * t) / root2) < 1e-12
        assert abs(amps[2] - (-1j) * math.sin(root2 * t) / root2) < 1e-12


def test_single_fermion_variant_check():
    with pytest.raises(ValueError):
        build_single_fermion_hamiltonian(
            FermionModelParams(variant="fermion_pair")
        )


# ---------------------------------------------------------------------------
# independent fermion pair


def test_fermion_pair_evolved_state_literal():
    # (D1, C1) and (D2, C2) Rabi-oscillate independently; the reordering
    # of the product over pair modes carries one fermionic sign on |0110>
    h = build_fermion_pair_hamiltonian(FermionModelParams(variant="fermion_pair"))
    psi0 = basis_ket(FERMION_PAIR_REGISTER, (0, 0, 1, 1))
    t = 0.37
    traj = evolve_closed(h, psi0, TimeGrid(0.0, t, 2))
    amps = traj.states[-1].amplitudes
    a, c = -1j * math.sin(t), math.cos(t)
    expected = np.zeros(16, dtype=complex)
    expected[0b1100] = a * a
    expected[0b1001] = a * c
    expected[0b0110] = -c * a
    expected[0b0011] = c * c
    assert np.allclose(amps, expected, atol=1e-12)


def test_fermion_pair_state_is_product_across_pair_cut():
    # after compensating the mode-interleaving sign (-1)^{n_D2 n_C1},
    # the state is exactly rank-1 across the (D1,C1) | (D2,C2) cut
    h = build_fermion_pair_hamiltonian(FermionModelParams(variant="fermion_pair"))
    psi0 = basis_ket(FERMION_PAIR_REGISTER, (0, 0, 1, 1))
    for t in (0.5, 1.3, 2.9):
        traj = evolve_closed(h, psi0, TimeGrid(0.0, t, 2))
        tensor = traj.states[-1].amplitudes.reshape(2, 2, 2, 2).copy()
        for n_d2 in range(2):
            for n_c1 in range(2):
                tensor[:, n_d2, n_c1, :] *= (-1.0) ** (n_d2 * n_c1)
        cut = tensor.transpose(0, 2, 1, 3).reshape(4, 4)
        svals = np.linalg.svd(cut, compute_uv=False)
        assert svals[1] < 1e-12


def test_fermion_pair_reduced_state_is_diagonal_product():
    h = build_fermion_pair_hamiltonian(FermionModelParams(variant="fermion_pair"))
    psi0 = basis_ket(FERMION_PAIR_REGISTER, (0, 0, 1, 1))
    t = 1.1
    traj = evolve_closed(h, psi0, TimeGrid(0.0, t, 2))
    red = partial_trace(
        pure_state_density(traj.states[-1]), ["D1", "D2"]
    ).elements
    p1, p2 = math.sin(t) ** 2, math.sin(t) ** 2
    expected = np.diag(
        [(1 - p1) * (1 - p2), (1 - p1) * p2, p1 * (1 - p2), p1 * p2]
    ).astype(complex)
    assert np.allclose(red, expected, atol=1e-12)


def test_fermion_pair_variant_check():
    with pytest.raises(ValueError):
        build_fermion_pair_hamiltonian(
            FermionModelParams(variant="single_fermion")
        )


# ---------------------------------------------------------------------------
# readout-stage Hamiltonian


def test_tomography_hamiltonian_hermitian_and_ignores_f():
    h = build_tomography_hamiltonian(1.0)
    assert np.allclose(h, h.conj().T, atol=1e-15)
    n_f = number_operator(TOMOGRAPHY_REGISTER, "F")
    assert np.allclose(h @ n_f, n_f @ h, atol=1e-14)


def test_tomography_mixing_is_balanced_at_quarter_period():
    # one excitation starting on DL splits 50/50 between DL and D1 after
    # the protocol's mixing time pi/(4T)
    coupling = 1.7
    h = build_tomography_hamiltonian(coupling)
    psi0 = basis_ket(TOMOGRAPHY_REGISTER, (1, 0, 0, 0, 0))
    t_mix = math.pi / (4.0 * coupling)
    traj = evolve_closed(h, psi0, TimeGrid(0.0, t_mix, 2))
    amps = traj.states[-1].amplitudes
    p_dl = abs(amps[0b10000]) ** 2
    p_d1 = abs(amps[0b00100]) ** 2
    assert abs(p_dl - 0.5) < 1e-12
    assert abs(p_d1 - 0.5) < 1e-12
    assert abs(p_dl + p_d1 - 1.0) < 1e-12


def test_tomography_hamiltonian_rejects_nonpositive_coupling():
    with pytest.raises(ValueError):
        build_tomography_hamiltonian(0.0)
    with pytest.raises(ValueError):
        build_tomography_hamiltonian(-2.0)


# ---------------------------------------------------------------------------
# jump operators


def test_jump_operators_scale_and_nilpotency():
    jumps = lindblad_jump_operators(OpenSystemParams(gamma=0.05), QD_MF_REGISTER)
    assert len(jumps) == 2
    for a in jumps:
        assert np.array_equal(a @ a, np.zeros_like(a))
        assert abs(np.linalg.norm(a) ** 2 - 0.05 * 4) < 1e-12


def test_jump_operators_zero_rate():
    jumps = lindblad_jump_operators(OpenSystemParams(gamma=0.0), QD_MF_REGISTER)
    for a in jumps:
        assert np.all(a == 0)


def test_open_system_params_reject_negative_rate():
    with pytest.raises(ValueError):
        OpenSystemParams(gamma=-0.1)
