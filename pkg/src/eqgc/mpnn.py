"""Compiling sum-aggregation message passing into EDU circuits.

A classical message-passing network with k layers, w registers per node
state, and b-bit fixed-point registers (wraparound two's-complement sums,
table-driven updates) is compiled to a quantum circuit on (2k+1)·w·b qubits
per node: edge layers add neighbor values into accumulator registers via an
addition EDU, and node layers XOR each update-table result onto fresh
registers.  The circuit acts classically on the computational basis, so the
quantum output reproduces the classical forward pass bit for bit;
``verify_simulation`` checks exactly that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .graphs import Graph
from .layers import EduGate, edu_matrix
from .linalg import kron
from .simulator import Statevector, apply_wires, basis_state, outcome_distribution

__all__ = [
    "MpnnSpec",
    "RegisterLayout",
    "make_update_table",
    "classical_forward",
    "increment_diagonalization",
    "addition_edu",
    "compile_mpnn",
    "CompiledMpnn",
    "verify_simulation",
    "SimulationMismatch",
    "uniqueness_probability",
    "uniqueness_bound_holds",
]

MAX_SIM_QUBITS = 18

RegTuple = tuple[int, ...]
UpdateTable = Mapping[tuple[RegTuple, RegTuple], RegTuple]


class SimulationMismatch(AssertionError):
    """Quantum and classical forward passes disagree; names the first register."""


def make_update_table(fn: Callable[[RegTuple, RegTuple], Sequence[int]], w: int, b: int) -> dict:
    """Tabulate an update function over all 2^{2wb} (state, aggregate) inputs."""
    values = range(2**b)
    table = {}
    for h in itertools.product(values, repeat=w):
        for a in itertools.product(values, repeat=w):
            out = tuple(int(x) % 2**b for x in fn(h, a))
            if len(out) != w:
                raise ValueError("update function must return w registers")
            table[(h, a)] = out
    return table


@dataclass(frozen=True)
class MpnnSpec:
    """k update layers over w registers of b bits each."""

    k: int
    w: int
    b: int
    updates: tuple[UpdateTable, ...]

    def __post_init__(self):
        if self.k < 1 or self.w < 1 or self.b < 1:
            raise ValueError("k, w, b must all be >= 1")
        if len(self.updates) != self.k:
            raise ValueError(f"need {self.k} update tables, got {len(self.updates)}")
        full = 2 ** (2 * self.w * self.b)
        for t, table in enumerate(self.updates):
            if len(table) != full:
                raise ValueError(f"update table {t} is not total: {len(table)} != {full}")

    @staticmethod
    def from_function(k: int, w: int, b: int, fn) -> "MpnnSpec":
        table = make_update_table(fn, w, b)
        return MpnnSpec(k, w, b, tuple(table for _ in range(k)))

    @property
    def qubits_per_node(self) -> int:
        return (2 * self.k + 1) * self.w * self.b


def classical_forward(spec: MpnnSpec, g: Graph, init: Sequence[RegTuple]) -> list[RegTuple]:
    """k rounds of neighbor-sum (mod 2^b) then table update; deterministic."""
    if len(init) != g.n:
        raise ValueError("need one initial register tuple per node")
    mod = 2**spec.b
    states = [tuple(int(x) % mod for x in h) for h in init]
    for h in states:
        if len(h) != spec.w:
            raise ValueError("initial states must have w registers")
    neighbors: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    for table in spec.updates:
        sums = [
            tuple(sum(states[u][i] for u in neighbors[v]) % mod for i in range(spec.w))
            for v in range(g.n)
        ]
        states = [tuple(table[(states[v], sums[v])]) for v in range(g.n)]
    return states


def increment_diagonalization(b: int) -> tuple[np.ndarray, np.ndarray]:
    """Fourier diagonalization (v, d) of the cyclic +1 map on 2^b values.

    The increment permutation S satisfies S = v† · d · v with v the DFT
    matrix and d = diag(ω^j), ω = e^{-2πi/2^b}.
    """
    if b > 4:
        raise ValueError("increment_diagonalization is limited to b <= 4")
    m = 2**b
    j, x = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    omega = np.exp(-2j * np.pi / m)
    v = omega ** (j * x) / np.sqrt(m)
    d = np.diag(omega ** np.arange(m))
    return v, d


def addition_edu(b: int) -> EduGate:
    """The two-node add-and-exchange gate over node dimension 2^{2b}.

    Each node carries registers (a, acc); the gate maps
    |a1, acc1>|a2, acc2> to |a1, acc1+a2>|a2, acc2+a1> with wraparound
    addition.  In the per-node basis I ⊗ DFT the gate is diagonal, with the
    phase ω^{a2·j1 + a1·j2} on Fourier indices (j1, j2).
    """
    if b > 2:
        raise ValueError("addition_edu is limited to b <= 2")
    m = 2**b
    s = m * m
    fourier, _ = increment_diagonalization(b)
    v = kron(np.eye(m, dtype=np.complex128), fourier)

    phases = np.zeros(s * s)
    for a1 in range(m):
        for j1 in range(m):
            for a2 in range(m):
                for j2 in range(m):
                    idx = ((a1 * m + j1) * s) + (a2 * m + j2)
                    phases[idx] = -2 * np.pi * (a2 * j1 + a1 * j2) / m
    return EduGate(v=v, d_phases=phases, undirected=True)


@dataclass(frozen=True)
class RegisterLayout:
    """Wire assignment: per node, h^(0..k) and a^(1..k) registers of b qubits.

    Within a node the order is h^0, then (a^t, h^t) for t = 1..k; registers
    are msb-first; nodes are laid out consecutively.
    """

    n: int
    k: int
    w: int
    b: int

    @property
    def qubits_per_node(self) -> int:
        return (2 * self.k + 1) * self.w * self.b

    @property
    def total_qubits(self) -> int:
        return self.n * self.qubits_per_node

    def _reg_wires(self, node: int, slot: int) -> list[int]:
        base = node * self.qubits_per_node + slot * self.b
        return list(range(base, base + self.b))

    def h_wires(self, node: int, t: int, i: int) -> list[int]:
        if not 0 <= t <= self.k:
            raise ValueError(f"h register layer {t} out of range")
        slot = i if t == 0 else (2 * t - 1) * self.w + self.w + i
        return self._reg_wires(node, slot)

    def a_wires(self, node: int, t: int, i: int) -> list[int]:
        if not 1 <= t <= self.k:
            raise ValueError(f"a register layer {t} out of range")
        slot = (2 * t - 1) * self.w + i
        return self._reg_wires(node, slot)

    def initial_index(self, init: Sequence[RegTuple]) -> int:
        """Basis index with h^0 = init and every other register zero."""
        total = self.total_qubits
        index = 0
        for node, regs in enumerate(init):
            for i, value in enumerate(regs):
                wires = self.h_wires(node, 0, i)
                for bit_pos, wire in enumerate(wires):
                    bit = (value >> (self.b - 1 - bit_pos)) & 1
                    index |= bit << (total - 1 - wire)
        return index

    def read_register(self, index: int, wires: Sequence[int]) -> int:
        total = self.total_qubits
        value = 0
        for wire in wires:
            value = (value << 1) | ((index >> (total - 1 - wire)) & 1)
        return value


def _update_unitary(table: UpdateTable, w: int, b: int) -> np.ndarray:
    """Permutation matrix XORing the update result onto the h^t registers.

    Acts on 3wb qubits ordered (h^{t-1}, a^t, h^t); basis values are read
    msb-first per register.
    """
    regbits = w * b
    dim = 1 << (3 * regbits)
    mat = np.zeros((dim, dim))

    def unpack(value: int) -> RegTuple:
        return tuple((value >> ((w - 1 - i) * b)) & (2**b - 1) for i in range(w))

    def pack(regs: RegTuple) -> int:
        out = 0
        for r in regs:
            out = (out << b) | r
        return out

    for src in range(dim):
        h_prev = unpack(src >> (2 * regbits))
        agg = unpack((src >> regbits) & ((1 << regbits) - 1))
        h_cur = src & ((1 << regbits) - 1)
        target = h_cur ^ pack(table[(h_prev, agg)])
        dst = (src >> regbits << regbits) | target
        mat[dst, src] = 1.0
    return mat


@dataclass(frozen=True)
class CompiledMpnn:
    """Per-graph circuit builder for a compiled message-passing network."""

    spec: MpnnSpec
    edge_gate: np.ndarray
    node_gates: tuple[np.ndarray, ...]

    def layout(self, g: Graph) -> RegisterLayout:
        return RegisterLayout(g.n, self.spec.k, self.spec.w, self.spec.b)

    def operations(self, g: Graph) -> list[tuple[np.ndarray, list[int]]]:
        """Flat (gate, wires) list; alternating edge and node layers."""
        lay = self.layout(g)
        if lay.total_qubits > MAX_SIM_QUBITS:
            raise ValueError(
                f"compiled circuit needs {lay.total_qubits} qubits; limit is {MAX_SIM_QUBITS}"
            )
        spec = self.spec
        ops = []
        for t in range(1, spec.k + 1):
            for u, v in g.sorted_edges():
                for i in range(spec.w):
                    wires = (
                        lay.h_wires(u, t - 1, i)
                        + lay.a_wires(u, t, i)
                        + lay.h_wires(v, t - 1, i)
                        + lay.a_wires(v, t, i)
                    )
                    ops.append((self.edge_gate, wires))
            for v in range(g.n):
                for_node = []
                for i in range(spec.w):
                    for_node += lay.h_wires(v, t - 1, i)
                for i in range(spec.w):
                    for_node += lay.a_wires(v, t, i)
                for i in range(spec.w):
                    for_node += lay.h_wires(v, t, i)
                ops.append((self.node_gates[t - 1], for_node))
        return ops

    def simulate(self, g: Graph, init: Sequence[RegTuple]) -> Statevector:
        lay = self.layout(g)
        state = basis_state(1, lay.total_qubits, lay.initial_index(init))
        for gate, wires in self.operations(g):
            state = apply_wires(state, gate, wires)
        return state


def compile_mpnn(spec: MpnnSpec) -> CompiledMpnn:
    """Build the reusable gates: one addition EDU and one update permutation per layer."""
    edge_gate = edu_matrix(addition_edu(spec.b))
    node_gates = tuple(_update_unitary(t, spec.w, spec.b) for t in spec.updates)
    return CompiledMpnn(spec, edge_gate, node_gates)


def verify_simulation(spec: MpnnSpec, g: Graph, init: Sequence[RegTuple]) -> bool:
    """Run the compiled circuit and demand a point mass on the classical output."""
    compiled = compile_mpnn(spec)
    lay = compiled.layout(g)
    state = compiled.simulate(g, init)
    dist = outcome_distribution(state)
    index, prob = max(dist.items(), key=lambda kv: kv[1])
    if abs(prob - 1.0) > 1e-10:
        raise SimulationMismatch(
            f"final state is not a basis state: top probability {prob!r} at index {index}"
        )
    expected = classical_forward(spec, g, init)
    for v in range(g.n):
        for i in range(spec.w):
            got = lay.read_register(index, lay.h_wires(v, spec.k, i))
            if got != expected[v][i]:
                raise SimulationMismatch(
                    f"register h^({spec.k},{i}) of node {v}: quantum {got}, classical {expected[v][i]}"
                )
    return True


def uniqueness_probability(n: int, b: int) -> float:
    """Probability that n uniform b-bit strings are pairwise distinct."""
    if n < 1 or b < 1:
        raise ValueError("n and b must be >= 1")
    if n > 2**b:
        return 0.0
    p = 1.0
    for i in range(n):
        p *= 1.0 - i / 2**b
    return p


def uniqueness_probability_exact(n: int, b: int) -> Fraction:
    """Same product, in exact rational arithmetic (test oracle)."""
    if n > 2**b:
        return Fraction(0)
    p = Fraction(1)
    for i in range(n):
        p *= 1 - Fraction(i, 2**b)
    return p


def uniqueness_bound_holds(n: int, b: int) -> bool:
    """Union-bound inequality: P(all distinct) >= 1 - n²/2^b."""
    return uniqueness_probability(n, b) >= 1.0 - n * n / 2**b - 1e-12
