"""Dense statevector engine over n node registers of q qubits each.

Basis convention (fixed once, asserted by tests): the basis index of a
digit string ``d_0 d_1 ... d_{n-1}`` is ``sum_i d_i * s**(n-1-i)`` with
``s = 2**q``; node 0 is the most significant.  Within a node, the first
qubit is likewise the most significant.  Gate application uses strided
index arithmetic on the amplitude array (no ``s**n x s**n`` matrices);
dense operators appear only in verification paths.

Public operations are functional: they return a new ``Statevector`` and
never mutate their input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .graphs import Permutation

__all__ = [
    "Statevector",
    "product_state",
    "plus_state",
    "basis_state",
    "apply_1local",
    "apply_2local",
    "apply_wires",
    "apply_permutation",
    "permutation_operator",
    "outcome_distribution",
    "ones_count_distribution",
]

MAX_DENSE_DIM = 4096

NORM_TOL = 1e-10


@dataclass(frozen=True)
class Statevector:
    """Amplitudes of a pure state over ``n`` nodes of ``q`` qubits each.

    ``amps`` is owned by the Statevector; callers must not mutate it.
    """

    n: int
    q: int
    amps: np.ndarray

    def __post_init__(self):
        expected = self.s**self.n
        if self.amps.shape != (expected,):
            raise ValueError(f"amplitude array has length {self.amps.shape}, expected {expected}")
        norm = float(np.sum(np.abs(self.amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm}")

    @property
    def s(self) -> int:
        return 2**self.q

    @property
    def num_wires(self) -> int:
        return self.n * self.q


def _as_state_array(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("state vector has non-finite entries")
    return a


def product_state(node_states) -> Statevector:
    """Tensor product of per-node states, node 0 most significant."""
    arrays = [_as_state_array(v) for v in node_states]
    if not arrays:
        raise ValueError("need at least one node state")
    s = arrays[0].shape[0]
    if s & (s - 1) or s < 2:
        raise ValueError(f"node dimension {s} is not a power of two")
    q = s.bit_length() - 1
    amps = np.ones(1, dtype=np.complex128)
    for a in arrays:
        if a.shape[0] != s:
            raise ValueError("node states must share one dimension")
        if abs(np.sum(np.abs(a) ** 2) - 1.0) > NORM_TOL:
            raise ValueError("node state is not normalized")
        amps = np.kron(amps, a)
    return Statevector(len(arrays), q, amps)


def plus_state(n: int) -> Statevector:
    """|+>^{⊗n} on single-qubit nodes."""
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    return product_state([plus] * n)


def basis_state(n: int, q: int, index: int) -> Statevector:
    amps = np.zeros((2**q) ** n, dtype=np.complex128)
    amps[index] = 1.0
    return Statevector(n, q, amps)


def _node_wires(state: Statevector, node: int) -> list[int]:
    return list(range(node * state.q, (node + 1) * state.q))


def _positions(state: Statevector, wires) -> np.ndarray:
    nw = state.num_wires
    return np.array([nw - 1 - w for w in wires], dtype=np.int64)


def _apply_wires_inplace(amps: np.ndarray, u: np.ndarray, positions: np.ndarray) -> None:
    k = len(positions)
    if u.shape != (1 << k, 1 << k):
        raise ValueError(f"gate shape {u.shape} does not match {k} wires")
    if k == 1:
        _backend.apply_1q(amps, u, int(positions[0]))
    elif k == 2:
        _backend.apply_2q(amps, u, int(positions[0]), int(positions[1]))
    else:
        _backend.apply_kq(amps, u, positions)


def apply_wires(state: Statevector, u, wires) -> Statevector:
    """Dense gate on an explicit wire subset (wire 0 = node 0's first qubit).

    The general primitive behind the node-granular operations; register-level
    constructions (e.g. message-passing compilations) use it directly.
    """
    wires = list(wires)
    if len(set(wires)) != len(wires):
        raise ValueError("duplicate wires")
    if any(not 0 <= w < state.num_wires for w in wires):
        raise ValueError("wire index out of range")
    u = np.ascontiguousarray(u, dtype=np.complex128)
    amps = state.amps.copy()
    _apply_wires_inplace(amps, u, _positions(state, wires))
    return Statevector(state.n, state.q, amps)


def apply_1local(state: Statevector, u, node: int) -> Statevector:
    """Apply an ``s x s`` unitary to one node register."""
    u = np.asarray(u)
    if u.shape != (state.s, state.s):
        raise ValueError(f"gate shape {u.shape} does not match node dimension {state.s}")
    if not 0 <= node < state.n:
        raise ValueError(f"node {node} out of range")
    return apply_wires(state, u, _node_wires(state, node))


def apply_2local(state: Statevector, u, a: int, b: int) -> Statevector:
    """Apply an ``s^2 x s^2`` unitary to nodes ``(a, b)``; ``a`` is the first register."""
    u = np.asarray(u)
    s2 = state.s**2
    if u.shape != (s2, s2):
        raise ValueError(f"gate shape {u.shape} does not match node-pair dimension {s2}")
    if a == b:
        raise ValueError("two-node gate needs distinct nodes")
    if not (0 <= a < state.n and 0 <= b < state.n):
        raise ValueError("node index out of range")
    return apply_wires(state, u, _node_wires(state, a) + _node_wires(state, b))


def apply_diag_2local(state: Statevector, diag, a: int, b: int) -> Statevector:
    """Apply a diagonal two-node gate given its ``s^2`` diagonal entries."""
    d = np.ascontiguousarray(diag, dtype=np.complex128).reshape(-1)
    if d.shape[0] != state.s**2:
        raise ValueError("diagonal length does not match node-pair dimension")
    if a == b:
        raise ValueError("two-node gate needs distinct nodes")
    amps = state.amps.copy()
    if state.q == 1:
        nw = state.num_wires
        _backend.apply_diag2(amps, d, nw - 1 - a, nw - 1 - b)
    else:
        _apply_wires_inplace(
            amps,
            np.diag(d),
            _positions(state, _node_wires(state, a) + _node_wires(state, b)),
        )
    return Statevector(state.n, state.q, amps)


def _digit_table(n: int, s: int) -> np.ndarray:
    """(n, s**n) array: row i holds digit i of every basis index."""
    idx = np.arange(s**n)
    return np.stack([(idx // s ** (n - 1 - i)) % s for i in range(n)])


def permutation_operator(p: Permutation, n: int, s: int) -> np.ndarray:
    """Dense matrix reordering the tensor factors: |v_1..v_n> -> |v_p(1)..v_p(n)>."""
    dim = s**n
    if dim > MAX_DENSE_DIM:
        raise ValueError(f"dense permutation operator of dimension {dim} exceeds {MAX_DENSE_DIM}")
    if p.n != n:
        raise ValueError("permutation size mismatch")
    digits = _digit_table(n, s)
    cols = np.arange(dim)
    rows = np.zeros(dim, dtype=np.int64)
    for i in range(n):
        rows += digits[p(i)] * s ** (n - 1 - i)
    m = np.zeros((dim, dim))
    m[rows, cols] = 1.0
    return m


def apply_permutation(state: Statevector, p: Permutation) -> Statevector:
    """Reorder node registers; exact amplitude relabeling, no arithmetic."""
    if p.n != state.n:
        raise ValueError("permutation size mismatch")
    t = state.amps.reshape([state.s] * state.n)
    amps = np.ascontiguousarray(t.transpose(p.image)).reshape(-1)
    return Statevector(state.n, state.q, amps.copy())


def outcome_distribution(state: Statevector, floor: float = 1e-14) -> dict[int, float]:
    """Born-rule outcome probabilities by basis index; entries below ``floor`` dropped."""
    probs = np.abs(state.amps) ** 2
    (support,) = np.nonzero(probs >= floor)
    return {int(i): float(probs[i]) for i in support}


def ones_count_distribution(state: Statevector) -> np.ndarray:
    """Probability of measuring exactly k |1>s, for k = 0..n (single-qubit nodes)."""
    if state.q != 1:
        raise ValueError("ones_count_distribution requires q = 1")
    probs = np.abs(state.amps) ** 2
    idx = np.arange(state.amps.shape[0], dtype=np.uint64)
    ones = np.zeros_like(idx)
    for b in range(state.n):
        ones += (idx >> np.uint64(b)) & np.uint64(1)
    return np.bincount(ones.astype(np.int64), weights=probs, minlength=state.n + 1)
