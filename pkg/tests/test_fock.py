"""Fock-space construction: operators, states, and partial traces."""

import numpy as np
import pytest

from qdcorr.fock import (
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

import helpers


def _labels(n):
    return ModeRegister(tuple(f"m{i}" for i in range(n)))


# ---------------------------------------------------------------------------
# registers


def test_register_basic_properties():
    reg = ModeRegister(("D1", "D2", "F"))
    assert reg.n_modes == 3
    assert reg.dimension == 8
    assert reg.position("D2") == 1


def test_register_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        ModeRegister(("a", "b", "a"))


def test_register_unknown_label_message_names_it():
    reg = ModeRegister(("D1", "D2"))
    with pytest.raises(ValueError, match="XX"):
        reg.position("XX")


# ---------------------------------------------------------------------------
# canonical anticommutation relations


@pytest.mark.parametrize("n_modes", [1, 2, 3, 4, 5])
def test_canonical_anticommutation_relations_exact(n_modes):
    reg = _labels(n_modes)
    ops = [annihilation_operator(reg, f"m{i}") for i in range(n_modes)]
    eye = np.eye(reg.dimension)
    for i, a_i in enumerate(ops):
        for j, a_j in enumerate(ops):
            anti_mixed = a_i @ a_j.conj().T + a_j.conj().T @ a_i
            anti_same = a_i @ a_j + a_j @ a_i
            expected = eye if i == j else np.zeros_like(eye)
            assert np.array_equal(anti_mixed, expected)
            assert np.array_equal(anti_same, np.zeros_like(eye))


def test_creation_is_adjoint_of_annihilation():
    reg = _labels(3)
    for label in reg.mode_labels:
        a = annihilation_operator(reg, label)
        assert np.array_equal(creation_operator(reg, label), a.conj().T)


def test_number_operator_diagonal():
    reg = _labels(3)
    for p, label in enumerate(reg.mode_labels):
        n_op = number_operator(reg, label)
        expected = np.diag(
            [(idx >> (reg.n_modes - 1 - p)) & 1 for idx in range(8)]
        ).astype(complex)
        assert np.array_equal(n_op, expected)


def test_parity_operator_is_sign_of_total_occupation():
    reg = _labels(4)
    par = parity_operator(reg)
    expected = np.diag(
        [(-1.0) ** bin(idx).count("1") for idx in range(16)]
    ).astype(complex)
    assert np.array_equal(par, expected)


# ---------------------------------------------------------------------------
# Majorana pair


def test_majorana_pair_identities_exact():
    reg = ModeRegister(("D1", "D2", "F"))
    g1, g2 = majorana_pair(reg, "F")
    eye = np.eye(8)
    assert np.array_equal(g1 @ g1, eye)
    assert np.array_equal(g2 @ g2, eye)
    assert np.array_equal(g1 @ g2 + g2 @ g1, np.zeros((8, 8)))
    assert np.array_equal(g1.conj().T, g1)
    assert np.array_equal(g2.conj().T, g2)
    # i g1 g2 / 2 recovers the occupation of the encoded fermion
    f = annihilation_operator(reg, "F")
    assert np.array_equal(
        0.5j * (g1 @ g2), f.conj().T @ f - 0.5 * eye
    )


# ---------------------------------------------------------------------------
# basis kets and the amplitude sign convention


def test_basis_ket_matches_creation_order_action():
    # |n1 n2 n3> = (c1^dag)^n1 (c2^dag)^n2 (c3^dag)^n3 |vac>: the operator
    # product reads in register order, so the last mode's creator acts first
    reg = ModeRegister(("D1", "D2", "F"))
    vac = basis_ket(reg, (0, 0, 0)).amplitudes
    for occ in [(1, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1), (0, 1, 1)]:
        product = vac
        for label, bit in reversed(list(zip(reg.mode_labels, occ))):
            if bit:
                product = creation_operator(reg, label) @ product
        assert np.array_equal(basis_ket(reg, occ).amplitudes, product)


def test_basis_ket_equals_kron_of_single_mode_kets():
    reg = ModeRegister(("a", "b", "c", "d"))
    lo, hi = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    for occ in [(1, 1, 0, 1), (0, 1, 1, 0), (1, 1, 1, 1)]:
        vec = np.array([1.0])
        for bit in occ:
            vec = np.kron(vec, hi if bit else lo)
        assert np.array_equal(basis_ket(reg, occ).amplitudes, vec.astype(complex))


def test_basis_ket_validates_occupations():
    reg = ModeRegister(("a", "b"))
    with pytest.raises(ValueError):
        basis_ket(reg, (1, 2))
    with pytest.raises(ValueError):
        basis_ket(reg, (1,))


# ---------------------------------------------------------------------------
# state containers


def test_state_vector_requires_normalization():
    reg = ModeRegister(("a",))
    with pytest.raises(ValueError):
        StateVector(reg, np.array([1.0, 1.0], dtype=complex))


def test_state_vector_density_matches_outer_product(rng):
    reg = ModeRegister(("a", "b"))
    psi = StateVector(reg, helpers.random_state_vector(rng, 4))
    rho = psi.density()
    expected = np.outer(psi.amplitudes, psi.amplitudes.conj())
    assert np.allclose(rho.elements, expected, atol=1e-15)
    assert np.allclose(
        pure_state_density(psi).elements, expected, atol=1e-15
    )


def test_density_matrix_validation():
    reg = ModeRegister(("a",))
    with pytest.raises(ValueError):  # not Hermitian
        DensityMatrix(reg, np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex))
    with pytest.raises(ValueError):  # trace != 1
        DensityMatrix(reg, np.diag([0.9, 0.3]).astype(complex))
    with pytest.raises(ValueError):  # negative eigenvalue beyond floor
        DensityMatrix(reg, np.diag([1.1, -0.1]).astype(complex))
    # a tiny negative eigenvalue within the floor is accepted
    DensityMatrix(reg, np.diag([1.0 + 5e-9, -5e-9]).astype(complex))


# ---------------------------------------------------------------------------
# partial trace


def test_partial_trace_of_product_state_factorizes(rng):
    reg = ModeRegister(("a", "b", "c"))
    rho_parts = [helpers.random_density_matrix(rng, 2) for _ in range(3)]
    full = np.kron(np.kron(rho_parts[0], rho_parts[1]), rho_parts[2])
    rho = DensityMatrix(reg, full)
    for keep, part in zip((["a"], ["b"], ["c"]), rho_parts):
        got = partial_trace(rho, keep)
        assert got.register.mode_labels == tuple(keep)
        assert np.allclose(got.elements, part, atol=1e-12)
    pair = partial_trace(rho, ["a", "c"])
    assert np.allclose(
        pair.elements, np.kron(rho_parts[0], rho_parts[2]), atol=1e-12
    )


def test_partial_trace_result_register_keeps_original_order(rng):
    reg = ModeRegister(("a", "b", "c"))
    rho = DensityMatrix(reg, helpers.random_density_matrix(rng, 8))
    got = partial_trace(rho, ["c", "a"])  # request out of order
    assert got.register.mode_labels == ("a", "c")


def test_partial_trace_two_step_equals_direct(rng):
    reg = ModeRegister(("a", "b", "c"))
    rho = DensityMatrix(reg, helpers.random_density_matrix(rng, 8))
    direct = partial_trace(rho, ["a"])
    two_step = partial_trace(partial_trace(rho, ["a", "b"]), ["a"])
    assert np.allclose(direct.elements, two_step.elements, atol=1e-12)


def test_partial_trace_preserves_trace_and_hermiticity(rng):
    reg = ModeRegister(("a", "b", "c", "d"))
    rho = DensityMatrix(reg, helpers.random_density_matrix(rng, 16))
    red = partial_trace(rho, ["b", "d"])
    assert abs(np.trace(red.elements) - 1.0) < 1e-12
    assert np.allclose(red.elements, red.elements.conj().T, atol=1e-14)


def test_partial_trace_of_odd_parity_state_is_x_shaped(rng):
    # a random superposition over |111>, |100>, |010>, |001> reduces to a
    # two-dot matrix with nonzero entries only on diagonal + anti-diagonal
    reg = ModeRegister(("D1", "D2", "F"))
    amps = np.zeros(8, dtype=complex)
    vals = helpers.random_state_vector(rng, 4)
    for idx, v in zip((7, 4, 2, 1), vals):
        amps[idx] = v
    rho = pure_state_density(StateVector(reg, amps))
    red = partial_trace(rho, ["D1", "D2"]).elements
    x_mask = np.zeros((4, 4), dtype=bool)
    x_mask[np.arange(4), np.arange(4)] = True
    x_mask[np.arange(4), 3 - np.arange(4)] = True
    assert np.all(np.abs(red[~x_mask]) < 1e-15)


def test_partial_trace_error_cases(rng):
    reg = ModeRegister(("a", "b"))
    rho = DensityMatrix(reg, helpers.random_density_matrix(rng, 4))
    with pytest.raises(ValueError):
        partial_trace(rho, [])
    with pytest.raises(ValueError):
        partial_trace(rho, ["a", "a"])
    with pytest.raises(ValueError):
        partial_trace(rho, ["nope"])
