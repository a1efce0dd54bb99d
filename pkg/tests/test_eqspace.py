import itertools

import numpy as np
import pytest

from eqgc.eqspace import (
    EquivariantWeights,
    NotEquivariantError,
    cz_all_pairs_weights,
    diagonal_dimension,
    full_dimension,
    matrix_from_weights,
    rank_oracle,
    uniform_unitary_weights,
    weight_classes,
    weights_from_matrix,
)
from eqgc.graphs import Graph, Permutation
from eqgc.layers import Circuit, DiagEdgeLayer, HADAMARD, circuit_unitary, embed_klocal
from eqgc.linalg import kron_all
from eqgc.simulator import permutation_operator


def test_weight_class_count():
    assert len(weight_classes(1)) == 4
    assert len(weight_classes(3)) == full_dimension(3)


def test_single_weight_column_structure():
    w = EquivariantWeights.zeros(3)
    w.w[(1, 0, 1)] = 1.0
    m = matrix_from_weights(w)
    col = m[:, 0b100]
    # the image of |100> is |001> + |010>
    expected = np.zeros(8, dtype=complex)
    expected[0b001] = expected[0b010] = 1.0
    assert np.array_equal(col, expected)


def test_identity_weights_give_identity_matrix():
    assert np.array_equal(matrix_from_weights(EquivariantWeights.identity(4)), np.eye(16))


def test_random_weights_are_equivariant():
    rng = np.random.default_rng(0)
    n = 3
    m = matrix_from_weights(EquivariantWeights.random(rng, n))
    for image in itertools.permutations(range(n)):
        ptilde = permutation_operator(Permutation(image), n, 2)
        assert np.abs(m - ptilde.T @ m @ ptilde).max() <= 1e-12


def test_weights_roundtrip_exact():
    rng = np.random.default_rng(1)
    for n in (1, 2, 3, 4):
        w = EquivariantWeights.random(rng, n)
        back = weights_from_matrix(matrix_from_weights(w))
        assert back.w == w.w


def test_weights_from_identity():
    w = weights_from_matrix(np.eye(8))
    for (i, j, k), val in w.w.items():
        assert val == (1.0 if (j == i and k == 0) else 0.0)


def test_weights_from_matrix_rejects_lopsided_gate():
    x_on_node0 = embed_klocal(np.array([[0, 1], [1, 0]], dtype=complex), [0], 3, 2)
    with pytest.raises(NotEquivariantError, match="not equivariant"):
        weights_from_matrix(x_on_node0)


def test_full_dimension_values():
    # class count = rank = C(n+3, 3); n=1 is the full 4-dim space of 2x2 maps
    assert [full_dimension(n) for n in range(1, 6)] == [4, 10, 20, 35, 56]
    for n in range(1, 6):
        assert rank_oracle(n) == full_dimension(n)


def test_rank_oracle_limit():
    with pytest.raises(ValueError):
        rank_oracle(6)


def _multiset_count(n, s):
    return len({tuple(sorted(t)) for t in itertools.product(range(s), repeat=n)})


def test_diagonal_dimension():
    assert diagonal_dimension(4, 2) == 5
    assert diagonal_dimension(3, 3) == 10
    assert diagonal_dimension(1, 2) == 2
    for n in range(1, 11):
        assert diagonal_dimension(n, 2) == n + 1
    for n in range(1, 7):
        for s in (1, 2, 3):
            assert diagonal_dimension(n, s) == _multiset_count(n, s)


def test_cz_all_pairs_weights():
    w0 = cz_all_pairs_weights(3, 0.0)
    assert matrix_from_weights(w0).trace() == pytest.approx(8)
    assert np.array_equal(matrix_from_weights(w0), np.eye(8))

    w = cz_all_pairs_weights(2, np.pi)
    assert w.w[(2, 2, 0)] == pytest.approx(-1.0)

    alpha = 1.234
    n = 3
    complete = Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    circuit = Circuit((DiagEdgeLayer(np.array([0, 0, 0, -alpha])),))
    brute = circuit_unitary(circuit, complete)
    assert np.abs(matrix_from_weights(cz_all_pairs_weights(n, alpha)) - brute).max() <= 1e-10


def test_uniform_unitary_weights():
    assert weights_from_matrix(np.eye(8)).w == uniform_unitary_weights(np.eye(2), 3).w

    w_h = uniform_unitary_weights(HADAMARD, 2)
    m = matrix_from_weights(w_h)
    assert np.abs(m - kron_all([HADAMARD, HADAMARD])).max() <= 1e-10
    assert np.all(np.abs(np.abs(m) - 0.5) <= 1e-12)

    x = np.array([[0, 1], [1, 0]], dtype=complex)
    w_x = uniform_unitary_weights(x, 3)
    for (i, j, k), val in w_x.w.items():
        if val != 0:
            assert j == 0 and k == 3 - i
    assert np.abs(matrix_from_weights(w_x) - kron_all([x] * 3)).max() <= 1e-12


def test_weight_table_validation():
    with pytest.raises(ValueError):
        EquivariantWeights(2, {(0, 0, 0): 1.0})
