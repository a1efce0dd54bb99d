"""Permutation-equivariant linear maps on n single-qubit registers.

Such a map is determined by one complex weight per class (i, j, k): the
input basis string has i ones, and the output string has j ones on the
input's one positions and k ones on its zero positions.  This module builds
matrices from weight tables and back, counts the space's dimension two
independent ways, and gives closed weight forms for two known circuits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EquivariantWeights",
    "NotEquivariantError",
    "weight_classes",
    "matrix_from_weights",
    "weights_from_matrix",
    "full_dimension",
    "rank_oracle",
    "diagonal_dimension",
    "cz_all_pairs_weights",
    "uniform_unitary_weights",
]


class NotEquivariantError(ValueError):
    """Raised when a matrix is not permutation equivariant; names a witness pair."""


def weight_classes(n: int) -> list[tuple[int, int, int]]:
    """All (i, j, k) with 0 <= i <= n, 0 <= j <= i, 0 <= k <= n - i."""
    return [
        (i, j, k)
        for i in range(n + 1)
        for j in range(i + 1)
        for k in range(n - i + 1)
    ]


@dataclass(frozen=True)
class EquivariantWeights:
    n: int
    w: dict[tuple[int, int, int], complex]

    def __post_init__(self):
        expected = set(weight_classes(self.n))
        if set(self.w) != expected:
            missing = expected - set(self.w)
            extra = set(self.w) - expected
            raise ValueError(f"bad weight table: missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]}")

    @staticmethod
    def zeros(n: int) -> "EquivariantWeights":
        return EquivariantWeights(n, {c: 0.0 for c in weight_classes(n)})

    @staticmethod
    def identity(n: int) -> "EquivariantWeights":
        w = {c: 0.0 for c in weight_classes(n)}
        for i in range(n + 1):
            w[(i, i, 0)] = 1.0
        return EquivariantWeights(n, w)

    @staticmethod
    def random(rng: np.random.Generator, n: int) -> "EquivariantWeights":
        return EquivariantWeights(
            n,
            {c: complex(rng.normal(), rng.normal()) for c in weight_classes(n)},
        )


def _popcounts(dim: int) -> np.ndarray:
    idx = np.arange(dim)
    out = np.zeros(dim, dtype=np.int64)
    b = 0
    while (1 << b) < dim:
        out += (idx >> b) & 1
        b += 1
    return out


def _class_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(i, j, k) of every (row, col) pair as dim x dim integer arrays."""
    dim = 1 << n
    cols = np.arange(dim)
    rows = cols.reshape(-1, 1)
    pop = _popcounts(dim)
    i = np.broadcast_to(pop[cols], (dim, dim))
    j = pop[np.bitwise_and(rows, cols)]
    k = pop[np.bitwise_and(rows, np.bitwise_not(cols) & (dim - 1))]
    return i, j, k


def matrix_from_weights(w: EquivariantWeights) -> np.ndarray:
    """2^n x 2^n matrix whose (row, col) entry is the weight of its class."""
    n = w.n
    table = np.zeros((n + 1, n + 1, n + 1), dtype=np.complex128)
    for (i, j, k), val in w.w.items():
        table[i, j, k] = val
    ci, cj, ck = _class_tables(n)
    return table[ci, cj, ck]


def _canonical_pair(n: int, i: int, j: int, k: int) -> tuple[int, int]:
    """(row, col) representative: col = sorted string with i trailing ones."""
    col = (1 << i) - 1
    row = ((1 << j) - 1) | (((1 << k) - 1) << i)
    return row, col


def weights_from_matrix(m: np.ndarray, tol: float = 1e-10) -> EquivariantWeights:
    """Read the weight table off a matrix; reject non-equivariant input.

    Every entry is compared against its class representative (taken at the
    sorted basis strings |0..01..1>); a deviation beyond ``tol`` raises
    :class:`NotEquivariantError` naming both entries.
    """
    m = np.asarray(m, dtype=np.complex128)
    dim = m.shape[0]
    n = dim.bit_length() - 1
    if m.shape != (dim, dim) or (1 << n) != dim:
        raise ValueError(f"expected a 2^n x 2^n matrix, got {m.shape}")

    w = {}
    for i, j, k in weight_classes(n):
        row, col = _canonical_pair(n, i, j, k)
        w[(i, j, k)] = complex(m[row, col])

    weights = EquivariantWeights(n, w)
    expected = matrix_from_weights(weights)
    dev = np.abs(m - expected)
    if dev.max() > tol:
        row, col = np.unravel_index(int(dev.argmax()), dev.shape)
        ci, cj, ck = _class_tables(n)
        i, j, k = int(ci[row, col]), int(cj[row, col]), int(ck[row, col])
        r0, c0 = _canonical_pair(n, i, j, k)
        raise NotEquivariantError(
            f"not equivariant: entry ({row}, {col}) = {m[row, col]!r} differs from "
            f"class ({i},{j},{k}) representative ({r0}, {c0}) = {m[r0, c0]!r}"
        )
    return weights


def full_dimension(n: int) -> int:
    """Dimension of the equivariant-map space: Σ (i+1)(n−i+1) = C(n+3, 3).

    The sum telescopes to (n+1)(n+2)(n+3)/6, not to the superficially
    similar n(n+1)(n+5)/6, which undercounts for every n >= 1.  The rank
    oracle and a Burnside orbit count both confirm the tetrahedral value
    (see the test suite).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    by_sum = sum((i + 1) * (n - i + 1) for i in range(n + 1))
    closed = (n + 1) * (n + 2) * (n + 3) // 6
    assert by_sum == closed, (by_sum, closed)
    return closed


def rank_oracle(n: int) -> int:
    """Rank of the stacked class-indicator matrices; independent dimension count."""
    if n > 5:
        raise ValueError("rank_oracle is limited to n <= 5")
    classes = weight_classes(n)
    ci, cj, ck = _class_tables(n)
    rows = []
    for i, j, k in classes:
        rows.append(((ci == i) & (cj == j) & (ck == k)).astype(np.float64).reshape(-1))
    return int(np.linalg.matrix_rank(np.stack(rows)))


def diagonal_dimension(n: int, s: int) -> int:
    """Number of node-state multisets: C(n+s-1, s-1)."""
    if n < 1 or s < 1:
        raise ValueError("n and s must be >= 1")
    return math.comb(n + s - 1, s - 1)


def cz_all_pairs_weights(n: int, alpha: float) -> EquivariantWeights:
    """Weights of CZ(alpha) applied between every node pair.

    Diagonal: an input with i ones meets i(i-1)/2 interacting pairs, each
    contributing a phase e^{-i·alpha}.
    """
    w = {c: 0.0 for c in weight_classes(n)}
    for i in range(n + 1):
        w[(i, i, 0)] = complex(np.exp(-1j * alpha * (i * (i - 1) / 2)))
    return EquivariantWeights(n, w)


def uniform_unitary_weights(u: np.ndarray, n: int) -> EquivariantWeights:
    """Weights of a single-qubit unitary applied at every node (u^{⊗n})."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError("uniform_unitary_weights needs a 2x2 matrix")
    w = {}
    for i, j, k in weight_classes(n):
        w[(i, j, k)] = complex(
            u[0, 0] ** (n - i - k) * u[0, 1] ** (i - j) * u[1, 0] ** k * u[1, 1] ** j
        )
    return EquivariantWeights(n, w)
