"""Graph values, permutations, and the cycle-classification dataset.

Graphs are immutable: a node count plus a set of undirected edges (ordered
pairs may be attached separately for directed-model checks).  The dataset
builder enumerates all one- and two-cycle graphs on 6..10 nodes and weights
the classes to equal total mass, with the 8-node graphs held out for
evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "Permutation",
    "LabeledGraph",
    "cycle_graph",
    "disjoint_union",
    "permute_graph",
    "are_isomorphic",
    "cycles_dataset",
    "adjacency_matrix",
    "graph_from_adjacency",
    "parse_graph",
    "format_graph",
]


def _canon_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected graph on nodes ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]]
    directed_edges: frozenset[tuple[int, int]] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) not canonically ordered")
        if self.directed_edges is not None:
            for u, v in self.directed_edges:
                if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                    raise ValueError(f"bad directed edge ({u}, {v})")

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        return Graph(n, frozenset(_canon_edge(u, v) for u, v in edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree_multiset(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(sorted(deg))


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``{0..n-1}``, stored as the image tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def random(rng: np.random.Generator, n: int) -> "Permutation":
        return Permutation(tuple(int(x) for x in rng.permutation(n)))

    def matrix(self) -> np.ndarray:
        """Column-convention permutation matrix: ``P e_j = e_{p(j)}``."""
        m = np.zeros((self.n, self.n))
        for j, i in enumerate(self.image):
            m[i, j] = 1.0
        return m


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    label: int
    weight: float = 1.0

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError("label must be 0 or 1")
        if not self.weight > 0:
            raise ValueError("weight must be positive")


def cycle_graph(n: int) -> Graph:
    """Single cycle ``0-1-...-{n-1}-0``; requires ``n >= 3``."""
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 nodes, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Disjoint union; ``b``'s node indices are shifted by ``a.n``."""
    shifted = [(u + a.n, v + a.n) for u, v in b.edges]
    return Graph.from_edges(a.n + b.n, list(a.edges) + shifted)


def permute_graph(g: Graph, p: Permutation) -> Graph:
    """Relabel nodes: edge ``{u, v}`` becomes ``{p(u), p(v)}``."""
    if p.n != g.n:
        raise ValueError(f"permutation size {p.n} != graph size {g.n}")
    return Graph.from_edges(g.n, [(p(u), p(v)) for u, v in g.edges])


def are_isomorphic(a: Graph, b: Graph) -> bool:
    """Brute-force isomorphism test for graphs with at most 8 nodes."""
    if a.n > 8 or b.n > 8:
        raise ValueError("are_isomorphic is limited to graphs with n <= 8")
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    if a.degree_multiset() != b.degree_multiset():
        return False
    target = b.edges
    for image in itertools.permutations(range(a.n)):
        p = dict(enumerate(image))
        if all(_canon_edge(p[u], p[v]) in target for u, v in a.edges):
            return True
    return False


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def graph_from_adjacency(a: np.ndarray) -> Graph:
    a = np.asarray(a)
    n = a.shape[0]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j] != 0]
    return Graph.from_edges(n, edges)


def _two_cycle_partitions(total: int) -> list[tuple[int, int]]:
    """Unordered pairs ``(a, b)`` with ``a + b = total`` and ``a, b >= 3``."""
    return [(a, total - a) for a in range(3, total // 2 + 1) if total - a >= a]


def cycles_dataset() -> tuple[list[LabeledGraph], list[LabeledGraph]]:
    """Binary classification data: single cycle (label 1) vs two cycles (0).

    All one- and two-cycle graphs on 6..10 total nodes; the 8-node graphs
    form the evaluation split.  Within each split, per-example weights are
    normalized so each class carries the same total weight (weight-based
    oversampling of the smaller class).
    """
    singles: list[tuple[int, Graph]] = [(n, cycle_graph(n)) for n in range(6, 11)]
    doubles: list[tuple[int, Graph]] = [
        (total, disjoint_union(cycle_graph(a), cycle_graph(b)))
        for total in range(6, 11)
        for a, b in _two_cycle_partitions(total)
    ]

    def split(items, label):
        train = [g for total, g in items if total != 8]
        evalg = [g for total, g in items if total == 8]
        return (
            [LabeledGraph(g, label, 1.0 / len(train)) for g in train],
            [LabeledGraph(g, label, 1.0 / len(evalg)) for g in evalg],
        )

    s_train, s_eval = split(singles, 1)
    d_train, d_eval = split(doubles, 0)
    return s_train + d_train, s_eval + d_eval


def format_graph(g: Graph) -> str:
    """Line format: ``n=<count>`` then one ``u v`` pair per edge."""
    lines = [f"n={g.n}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("graph text must start with 'n=<count>'")
    n = int(lines[0][2:])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)
