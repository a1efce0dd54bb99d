import numpy as np
import pytest

from eqgc.linalg import (
    expm_hermitian,
    herm_eig,
    is_unitary,
    kron,
    logm_unitary,
    random_hermitian,
    random_unitary,
)

I2 = np.eye(2, dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_diagonal_structure():
    out = kron(np.diag([1.0, -1.0]), I2)
    assert np.array_equal(np.diag(out), [1, 1, -1, -1])


def test_kron_hadamard_on_00():
    # column 0 of H⊗H is the image of |00>
    col = kron(H, H)[:, 0]
    assert np.allclose(col, 0.5)


def test_is_unitary_cases():
    assert is_unitary(np.eye(4), 1e-12)
    assert not is_unitary(np.diag([1.0, 2.0]), 1e-12)
    for alpha in (0.3, -2.0, np.pi):
        cz = np.diag([1, 1, 1, np.exp(-1j * alpha)])
        assert is_unitary(cz, 1e-12)


def test_is_unitary_rejects_nonsquare():
    with pytest.raises(ValueError):
        is_unitary(np.ones((2, 3)))


def test_herm_eig_sorted():
    evals, _ = herm_eig(np.diag([3.0, 1.0]))
    assert np.allclose(evals, [1.0, 3.0])


def test_herm_eig_pauli_x():
    evals, evecs = herm_eig(X)
    assert np.allclose(evals, [-1.0, 1.0])
    minus = np.array([1, -1]) / np.sqrt(2)
    plus = np.array([1, 1]) / np.sqrt(2)
    assert abs(abs(np.vdot(evecs[:, 0], minus)) - 1) < 1e-12
    assert abs(abs(np.vdot(evecs[:, 1], plus)) - 1) < 1e-12


def test_herm_eig_reconstruction_random():
    rng = np.random.default_rng(3)
    for dim in (8, 16):
        h = random_hermitian(rng, dim)
        evals, evecs = herm_eig(h)
        back = (evecs * evals) @ evecs.conj().T
        assert np.abs(back - h).max() <= 1e-10
        assert is_unitary(evecs, 1e-10)


def test_herm_eig_rejects_nonhermitian():
    with pytest.raises(ValueError):
        herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_expm_zero_is_identity():
    assert np.allclose(expm_hermitian(np.zeros((3, 3))), np.eye(3))


def test_expm_diagonal():
    out = expm_hermitian(np.diag([np.pi, 0.0]))
    assert np.abs(out - np.diag([-1.0, 1.0])).max() <= 1e-12


def test_expm_semigroup():
    rng = np.random.default_rng(5)
    h = random_hermitian(rng, 6)
    one = expm_hermitian(h)
    assert np.abs(expm_hermitian(2 * h) - one @ one).max() <= 1e-10


def test_logm_identity():
    assert np.abs(logm_unitary(np.eye(3))).max() <= 1e-12


def test_logm_principal_branch():
    out = logm_unitary(np.diag([1.0, -1.0]))
    assert np.abs(out - np.diag([0.0, np.pi])).max() <= 1e-12


def test_logm_roundtrip_random():
    rng = np.random.default_rng(11)
    for dim in (2, 4):
        for _ in range(5):
            u = random_unitary(rng, dim)
            assert np.abs(expm_hermitian(logm_unitary(u)) - u).max() <= 1e-9


def test_logm_rejects_nonunitary():
    with pytest.raises(ValueError):
        logm_unitary(np.diag([1.0, 2.0]))


def test_kron_associativity_and_mixed_product():
    rng = np.random.default_rng(17)
    for _ in range(10):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        assert np.abs(kron(kron(a, b), c) - kron(a, kron(b, c))).max() <= 1e-12
        assert np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)).max() <= 1e-10
