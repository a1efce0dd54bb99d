"""EQGC layer algebra.

Layer kinds: node layers (one unitary ``V`` applied at every node), edge
layers (one equivariantly diagonalizable unitary, EDU, applied per edge),
bare diagonal edge layers, and Hamiltonian layers (exponential of summed
per-node and per-edge Hermitian generators).  Alongside the layers live the
equivariance / commutativity / symmetry checkers and the converters that
rewrite node, diagonal-edge, and EDU layers as Hamiltonian layers.

Edge-layer application uses a canonical sorted edge order and orients each
gate as (min, max); for EDUs the result is provably order-independent, and
all dense verification paths use the same orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .graphs import Graph, Permutation, adjacency_matrix, graph_from_adjacency
from .linalg import (
    expm_hermitian,
    is_hermitian,
    is_unitary,
    kron,
    kron_all,
    logm_unitary,
    principal_phase,
)
from .simulator import (
    MAX_DENSE_DIM,
    Statevector,
    apply_1local,
    apply_2local,
    apply_diag_2local,
    permutation_operator,
)

__all__ = [
    "NodeLayer",
    "EduGate",
    "EdgeLayer",
    "DiagEdgeLayer",
    "EhLayer",
    "Circuit",
    "euler_unitary",
    "cz_gate",
    "cz_phases",
    "HADAMARD",
    "edu_matrix",
    "apply_circuit",
    "circuit_unitary",
    "embed_klocal",
    "check_equivariance",
    "check_commutativity",
    "check_undirected_symmetry",
    "check_directed_conditions",
    "node_layer_to_eh",
    "diag_edge_to_eh",
    "edu_to_eh",
    "absorb_redundancy",
    "parse_circuit",
    "format_circuit",
]

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)

UNITARY_TOL = 1e-10


def euler_unitary(t1: float, t2: float, t3: float) -> np.ndarray:
    """Single-qubit unitary Rz(t3)·Ry(t2)·Rz(t1), global phase dropped."""
    rz1 = np.array([[np.exp(-0.5j * t1), 0], [0, np.exp(0.5j * t1)]])
    ry = np.array(
        [[np.cos(t2 / 2), -np.sin(t2 / 2)], [np.sin(t2 / 2), np.cos(t2 / 2)]],
        dtype=np.complex128,
    )
    rz3 = np.array([[np.exp(-0.5j * t3), 0], [0, np.exp(0.5j * t3)]])
    return rz3 @ ry @ rz1


def cz_phases(alpha: float) -> np.ndarray:
    """Phase table of CZ(alpha) = diag(1, 1, 1, e^{-i·alpha})."""
    return np.array([0.0, 0.0, 0.0, -alpha])


def cz_gate(alpha: float) -> np.ndarray:
    return np.diag(np.exp(1j * cz_phases(alpha)))


@dataclass(frozen=True)
class NodeLayer:
    """The same one-node unitary applied at every node.

    ``euler`` records the (t1, t2, t3) angles when the layer was built in
    parameterized form; it is metadata only.
    """

    v: np.ndarray
    euler: tuple[float, float, float] | None = None

    @staticmethod
    def from_euler(t1: float, t2: float, t3: float) -> "NodeLayer":
        return NodeLayer(euler_unitary(t1, t2, t3), euler=(t1, t2, t3))

    @property
    def s(self) -> int:
        return self.v.shape[0]

    def validate(self) -> None:
        if not is_unitary(self.v, UNITARY_TOL):
            raise ValueError("node layer matrix is not unitary")


@dataclass(frozen=True)
class EduGate:
    """Equivariantly diagonalizable two-node unitary (V† ⊗ V†) D (V ⊗ V).

    ``d_phases`` holds the s² phases of the diagonal, D = diag(e^{i·φ}).
    For undirected gates the phase of |e1 e2> must equal that of |e2 e1>.
    """

    v: np.ndarray
    d_phases: np.ndarray
    undirected: bool = True

    @property
    def s(self) -> int:
        return self.v.shape[0]

    def validate(self, tol: float = UNITARY_TOL) -> None:
        s = self.s
        if self.v.shape != (s, s) or not is_unitary(self.v, tol):
            raise ValueError("EDU basis V is not unitary")
        phases = np.asarray(self.d_phases, dtype=np.float64)
        if phases.shape != (s * s,):
            raise ValueError(f"d_phases must have length {s * s}")
        if self.undirected:
            table = phases.reshape(s, s)
            dev = np.abs(np.exp(1j * table) - np.exp(1j * table.T)).max()
            if dev > tol:
                raise ValueError(
                    "undirected EDU has asymmetric diagonal: "
                    f"max |D[e1e2] - D[e2e1]| = {dev:.3e}"
                )


@dataclass(frozen=True)
class EdgeLayer:
    """The same EDU applied once per edge."""

    gate: EduGate

    @property
    def s(self) -> int:
        return self.gate.s


@dataclass(frozen=True)
class DiagEdgeLayer:
    """A bare diagonal unitary (phases, length s²) applied once per edge."""

    d_phases: np.ndarray

    @property
    def s(self) -> int:
        return int(round(np.sqrt(len(self.d_phases))))

    def diag(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.d_phases, dtype=np.float64))


@dataclass(frozen=True)
class EhLayer:
    """exp(-i (Σ_edges h_edge + Σ_nodes h_node)) with one term per undirected edge."""

    h_node: np.ndarray
    h_edge: np.ndarray

    @property
    def s(self) -> int:
        return self.h_node.shape[0]

    def validate(self, tol: float = UNITARY_TOL) -> None:
        if not is_hermitian(self.h_node, tol):
            raise ValueError("h_node is not Hermitian")
        if not is_hermitian(self.h_edge, tol):
            raise ValueError("h_edge is not Hermitian")
        if self.h_edge.shape != (self.s**2, self.s**2):
            raise ValueError("h_edge dimension does not match h_node")


Layer = Union[NodeLayer, EdgeLayer, DiagEdgeLayer, EhLayer]


@dataclass(frozen=True)
class Circuit:
    layers: tuple[Layer, ...]

    def __post_init__(self):
        ss = {layer.s for layer in self.layers}
        if len(ss) > 1:
            raise ValueError(f"layers disagree on node dimension: {sorted(ss)}")

    @property
    def s(self) -> int:
        return self.layers[0].s if self.layers else 2


def edu_matrix(g: EduGate) -> np.ndarray:
    """Dense s² x s² matrix (V† ⊗ V†) · diag(e^{iφ}) · (V ⊗ V)."""
    g.validate()
    vv = kron(g.v, g.v)
    return (vv.conj().T * np.exp(1j * np.asarray(g.d_phases, dtype=np.float64))) @ vv


def _assemble_hamiltonian(layer: EhLayer, g: Graph, s: int) -> np.ndarray:
    dim = s**g.n
    h = np.zeros((dim, dim), dtype=np.complex128)
    for v in range(g.n):
        h += embed_klocal(layer.h_node, [v], g.n, s)
    for a, b in g.sorted_edges():
        h += embed_klocal(layer.h_edge, [a, b], g.n, s)
    return h


def apply_circuit(c: Circuit, g: Graph, state: Statevector) -> Statevector:
    """Apply layers in list order to ``state`` (which lives on ``g``'s nodes)."""
    if state.n != g.n:
        raise ValueError(f"state has {state.n} nodes, graph has {g.n}")
    if c.layers and c.s != state.s:
        raise ValueError(f"circuit node dimension {c.s} != state dimension {state.s}")
    for layer in c.layers:
        if isinstance(layer, NodeLayer):
            layer.validate()
            for v in range(g.n):
                state = apply_1local(state, layer.v, v)
        elif isinstance(layer, EdgeLayer):
            m = edu_matrix(layer.gate)
            for a, b in g.sorted_edges():
                state = apply_2local(state, m, a, b)
        elif isinstance(layer, DiagEdgeLayer):
            d = layer.diag()
            for a, b in g.sorted_edges():
                state = apply_diag_2local(state, d, a, b)
        elif isinstance(layer, EhLayer):
            layer.validate()
            if state.s**state.n > MAX_DENSE_DIM:
                raise ValueError("Hamiltonian layer needs dense evaluation; state too large")
            u = expm_hermitian(_assemble_hamiltonian(layer, g, state.s))
            state = Statevector(state.n, state.q, u @ state.amps)
        else:
            raise TypeError(f"unknown layer type {type(layer)!r}")
    return state


def embed_klocal(u: np.ndarray, nodes, n: int, s: int) -> np.ndarray:
    """Dense s^n x s^n embedding of a k-node operator at the given nodes."""
    dim = s**n
    if dim > MAX_DENSE_DIM:
        raise ValueError(f"dense embedding of dimension {dim} exceeds {MAX_DENSE_DIM}")
    nodes = list(nodes)
    k = len(nodes)
    t = np.eye(dim, dtype=np.complex128).reshape([s] * n + [dim])
    ut = np.asarray(u, dtype=np.complex128).reshape([s] * (2 * k))
    t = np.tensordot(ut, t, axes=(list(range(k, 2 * k)), nodes))
    t = np.moveaxis(t, list(range(k)), nodes)
    return t.reshape(dim, dim)


def circuit_unitary(c: Circuit, g: Graph) -> np.ndarray:
    """Dense circuit matrix, built layer by layer from embedded operators."""
    s = c.s
    dim = s**g.n
    if dim > MAX_DENSE_DIM:
        raise ValueError(f"dense circuit of dimension {dim} exceeds {MAX_DENSE_DIM}")
    total = np.eye(dim, dtype=np.complex128)
    for layer in c.layers:
        if isinstance(layer, NodeLayer):
            layer.validate()
            m = kron_all([layer.v] * g.n) if g.n else np.eye(1, dtype=np.complex128)
        elif isinstance(layer, (EdgeLayer, DiagEdgeLayer)):
            gate = edu_matrix(layer.gate) if isinstance(layer, EdgeLayer) else np.diag(layer.diag())
            m = np.eye(dim, dtype=np.complex128)
            for a, b in g.sorted_edges():
                m = embed_klocal(gate, [a, b], g.n, s) @ m
        elif isinstance(layer, EhLayer):
            layer.validate()
            m = expm_hermitian(_assemble_hamiltonian(layer, g, s))
        else:
            raise TypeError(f"unknown layer type {type(layer)!r}")
        total = m @ total
    return total


CircuitLike = Union[Circuit, Callable[[Graph], np.ndarray]]


def _unitary_fn(c: CircuitLike) -> Callable[[Graph], np.ndarray]:
    if isinstance(c, Circuit):
        return lambda g: circuit_unitary(c, g)
    return c


def check_equivariance(c: CircuitLike, g: Graph, p: Permutation, tol: float) -> bool:
    """Check C(A) = P̃ᵀ · C(PᵀAP) · P̃ for one permutation.

    ``c`` may be a Circuit or any function from graphs to unitaries (the
    latter allows negative controls that are not uniform layer circuits).
    """
    fn = _unitary_fn(c)
    lhs = fn(g)
    if isinstance(c, Circuit):
        s = c.s
    else:
        s = int(round(lhs.shape[0] ** (1.0 / g.n))) if g.n else 2
    pm = p.matrix()
    permuted = graph_from_adjacency(pm.T @ adjacency_matrix(g) @ pm)
    ptilde = permutation_operator(p, g.n, s)
    rhs = ptilde.T @ fn(permuted) @ ptilde
    return float(np.abs(lhs - rhs).max()) <= tol


def _two_register_op(u: np.ndarray, a: int, b: int, n: int, s: int) -> np.ndarray:
    return embed_klocal(u, [a, b], n, s)


def check_commutativity(u: np.ndarray, tol: float = 1e-9) -> bool:
    """Do copies of ``u`` sharing their first register commute (3-register test)?"""
    s = int(round(np.sqrt(u.shape[0])))
    a = _two_register_op(u, 0, 1, 3, s)
    b = _two_register_op(u, 0, 2, 3, s)
    return float(np.abs(a @ b - b @ a).max()) <= tol


def check_undirected_symmetry(u: np.ndarray, tol: float = 1e-9) -> bool:
    """Is ``u`` invariant under swapping its two registers?"""
    s = int(round(np.sqrt(u.shape[0])))
    swap = permutation_operator(Permutation((1, 0)), 2, s)
    return float(np.abs(swap @ u @ swap - u).max()) <= tol


def check_directed_conditions(u: np.ndarray, tol: float = 1e-9) -> bool:
    """Order-independence when the gate may be applied in either direction.

    Three operator identities: copies sharing a node head-to-tail commute,
    copies sharing their second (head) register commute, and the two
    orientations on one node pair commute.
    """
    s = int(round(np.sqrt(u.shape[0])))
    swap = permutation_operator(Permutation((1, 0)), 2, s)
    u_rev = swap @ u @ swap

    a01 = _two_register_op(u, 0, 1, 3, s)
    a20 = _two_register_op(u, 2, 0, 3, s)
    if float(np.abs(a01 @ a20 - a20 @ a01).max()) > tol:
        return False

    a10 = _two_register_op(u, 1, 0, 3, s)
    if float(np.abs(a10 @ a20 - a20 @ a10).max()) > tol:
        return False

    return float(np.abs(u @ u_rev - u_rev @ u).max()) <= tol


def node_layer_to_eh(v: np.ndarray) -> EhLayer:
    """Hamiltonian layer reproducing V at every node: h_node = -i·log V, h_edge = 0."""
    s = v.shape[0]
    return EhLayer(h_node=logm_unitary(v), h_edge=np.zeros((s * s, s * s), dtype=np.complex128))


def diag_edge_to_eh(d_phases) -> EhLayer:
    """Hamiltonian layer reproducing a diagonal gate per edge.

    h_edge = diag(ξ) with e^{-iξ} equal to the gate's diagonal, ξ in (-π, π].
    """
    phases = np.asarray(d_phases, dtype=np.float64)
    s2 = phases.shape[0]
    s = int(round(np.sqrt(s2)))
    xi = principal_phase(-phases)
    return EhLayer(
        h_node=np.zeros((s, s), dtype=np.complex128),
        h_edge=np.diag(xi.astype(np.complex128)),
    )


def edu_to_eh(g: EduGate) -> list[EhLayer]:
    """Three Hamiltonian layers composing to the EDU edge layer on any graph.

    Isolated nodes see V followed by V†, i.e. the identity, so the equality
    holds graph-independently.
    """
    g.validate()
    return [
        node_layer_to_eh(g.v),
        diag_edge_to_eh(g.d_phases),
        node_layer_to_eh(g.v.conj().T),
    ]


def absorb_redundancy(
    u1: NodeLayer, g: EduGate, u2: NodeLayer
) -> tuple[NodeLayer, DiagEdgeLayer, NodeLayer]:
    """Fold the EDU's basis change into the surrounding node layers.

    (u1, EDU(V, D), u2) applied in order equals (V·u1, D, u2·V†): the edge
    layer keeps only its diagonal and a node-edge layer pair carries
    3 + 3 = 6 real degrees of freedom for single-qubit nodes.
    """
    g.validate()
    u1.validate()
    u2.validate()
    if not (u1.s == g.s == u2.s):
        raise ValueError("node layers and gate disagree on node dimension")
    return (
        NodeLayer(g.v @ u1.v),
        DiagEdgeLayer(np.asarray(g.d_phases, dtype=np.float64).copy()),
        NodeLayer(u2.v @ g.v.conj().T),
    )


def format_circuit(c: Circuit) -> str:
    """One line per layer: 'node t1 t2 t3' | 'edge p00 p01 p11' | 'czedge a' | 'hnode'."""
    lines = []
    for layer in c.layers:
        if isinstance(layer, NodeLayer):
            if layer.euler is not None:
                t1, t2, t3 = (float(t) for t in layer.euler)
                lines.append(f"node {t1!r} {t2!r} {t3!r}")
            elif layer.v.shape == (2, 2) and np.allclose(layer.v, HADAMARD):
                lines.append("hnode")
            else:
                raise ValueError("only Euler-form and Hadamard node layers serialize")
        elif isinstance(layer, DiagEdgeLayer):
            p = np.asarray(layer.d_phases, dtype=np.float64)
            if p.shape != (4,):
                raise ValueError("only single-qubit edge layers serialize")
            lines.append(f"edge {float(p[0])!r} {float(p[1])!r} {float(p[3])!r}")
        else:
            raise ValueError(f"layer {type(layer).__name__} has no text form")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Parse the line format emitted by :func:`format_circuit`.

    'node t1 t2 t3' builds an Euler node layer, 'edge p00 p01 p11' an
    undirected diagonal edge layer, 'czedge a' a CZ(a) edge layer, and
    'hnode' a Hadamard node layer.
    """
    layers: list[Layer] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind, args = parts[0], [float(x) for x in parts[1:]]
        if kind == "node":
            if len(args) != 3:
                raise ValueError(f"'node' takes 3 angles: {line!r}")
            layers.append(NodeLayer.from_euler(*args))
        elif kind == "edge":
            if len(args) != 3:
                raise ValueError(f"'edge' takes 3 phases: {line!r}")
            layers.append(DiagEdgeLayer(np.array([args[0], args[1], args[1], args[2]])))
        elif kind == "czedge":
            if len(args) != 1:
                raise ValueError(f"'czedge' takes 1 angle: {line!r}")
            layers.append(DiagEdgeLayer(cz_phases(args[0])))
        elif kind == "hnode":
            if args:
                raise ValueError(f"'hnode' takes no arguments: {line!r}")
            layers.append(NodeLayer(HADAMARD))
        else:
            raise ValueError(f"unknown layer kind {kind!r}")
    return Circuit(tuple(layers))
